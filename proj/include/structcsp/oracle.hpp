#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "structcsp/hypergraph.hpp"
#include "structcsp/model.hpp"

// Naive reference implementations. Nothing here may depend on the acyclic,
// optimize, decomposition or reduce modules.

namespace structcsp::oracle {

inline constexpr double kAssignmentLimit = 1e6;
inline constexpr std::size_t kJoinTreeEdgeLimit = 6;

struct Optimum {
  Assignment assignment;
  Cost cost;
};

struct MinViolation {
  Assignment assignment;
  std::size_t violation_degree = 0;
  /// Sum of the violation costs of the violated constraints.
  Rational violation_cost{0};
};

/// Every total assignment satisfying all constraints, in canonical order.
std::vector<Assignment> brute_force_solutions(const CspInstance& instance);

/// Minimal unary cost over all solutions; ties by canonical assignment order.
std::optional<Optimum> brute_force_optimal(const CspInstance& instance, const UnaryCostFunction& w,
                                           const CostMonoid& monoid = CostMonoid::sum());

/// Minimal combined tuple weight over all solutions. Every constraint needs tuple weights.
std::optional<Optimum> brute_force_weighted_optimal(const CspInstance& instance,
                                                    const CostMonoid& monoid = CostMonoid::sum());

/// Minimal violation cost over all assignments (ties by canonical order).
MinViolation brute_force_min_violation(const CspInstance& instance);

/// Every labelled tree on the hyperedges (Pruefer sequences), first that passes check_join_tree.
std::optional<JoinTree> exhaustive_join_tree_search(const Hypergraph& h);

}  // namespace structcsp::oracle
