#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "structcsp/acyclic.hpp"
#include "structcsp/decomposition.hpp"
#include "structcsp/model.hpp"

namespace structcsp {

struct OptimalSolution {
  Assignment assignment;
  Cost cost;
};

/// nullopt means the instance is unsatisfiable.
using SolveOutcome = std::optional<OptimalSolution>;

/// True iff `a` and `b` bind every variable of `shared` to the same value.
bool conforms(const Substitution& a, const Substitution& b, std::span<const VarId> shared);

/// Dynamic-programming state for one join-tree node.
struct DpNode {
  /// Surviving tuples, canonical order.
  Relation relation;
  /// Best cost of the subtree rooted here given each row (the l-label).
  std::vector<Cost> label;
  /// Part of the label not fixed by the variables shared with the parent;
  /// the quantity minimized by the parent when choosing a child tuple.
  std::vector<Cost> residual;
  /// best_child[slot][row]: chosen row of the slot-th child (RootedTree order).
  std::vector<std::vector<std::size_t>> best_child;
};

struct DpTable {
  JoinTree join_tree;
  RootedTree rooted;
  std::vector<DpNode> nodes;
  /// False when some node lost all of its rows during the bottom-up pass.
  bool satisfiable = false;
};

/// Bottom-up pass. Each variable's weight is charged at the node closest to
/// the root whose scope contains it, so no subtraction is needed and any
/// monotone monoid works.
DpTable compute_dp_table(const CspInstance& instance, const UnaryCostFunction& w, const JoinTree& tree,
                         const CostMonoid& monoid = CostMonoid::sum());

/// Additive-only labels computed by literally subtracting w(theta_c /\ theta_v) at
/// each tree edge. Kept as a cross-check of compute_dp_table.
DpTable compute_dp_table_subtractive(const CspInstance& instance, const UnaryCostFunction& w,
                                     const JoinTree& tree);

/// Root row of minimal label, then stored child pointers top-down.
SolveOutcome extract_optimal_solution(const CspInstance& instance, const DpTable& table);

SolveOutcome compute_optimal_solution(const CspInstance& instance, const UnaryCostFunction& w,
                                      const JoinTree& tree, const CostMonoid& monoid = CostMonoid::sum());

inline constexpr double kDefaultBudget = 1e7;

/// Acyclicizes with the decomposition and solves the resulting instance.
SolveOutcome solve_with_decomposition(const CspInstance& instance, const UnaryCostFunction& w,
                                      const GeneralizedHypertreeDecomposition& d,
                                      const CostMonoid& monoid = CostMonoid::sum(),
                                      double budget = kDefaultBudget);

}  // namespace structcsp
