#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "structcsp/decomposition.hpp"
#include "structcsp/model.hpp"

namespace structcsp {

inline constexpr std::string_view kUnsatValue = "__unsat";

/// Fresh names take 0-based indices and print them 1-based.
std::string fresh_tuple_selector_name(std::size_t constraint);                  // "__D<v>"
std::string fresh_scope_variable_name(std::size_t constraint);                  // "__S<i>"
std::string fresh_tuple_value_name(std::size_t constraint, std::size_t tuple);  // "__u<v>_<t>"

struct FreshVariable {
  std::string name;
  /// Original constraint the variable stands for.
  std::size_t constraint;
};

struct FreshValue {
  std::string name;
  std::size_t constraint;
  std::size_t tuple;
};

/// Bookkeeping produced by each transformation.
struct ReductionArtifacts {
  std::string kind;  // "tree-decomposition", "ghd", "wcsp", "maxcsp"
  /// Original variable names; the transformed instance declares them first, in this order.
  std::vector<std::string> original_variables;
  std::vector<FreshVariable> fresh_variables;
  std::vector<FreshValue> fresh_values;
  std::optional<std::string> sentinel;
  /// Acyclicizations: the tree nodes whose bag filtered each original constraint.
  std::vector<std::vector<std::size_t>> constraint_nodes;
  /// Largest relation materialized at any node, and the bound it must respect.
  std::size_t largest_node_relation = 0;
  double node_relation_bound = 0;

  /// Drops fresh bindings. Throws InputError on a wrong-sized assignment.
  Assignment back_map(const Assignment& transformed) const;
};

/// Instance, join tree of its hypergraph, and the artifacts.
struct AcyclicReduction {
  CspInstance instance;
  JoinTree join_tree;
  ReductionArtifacts artifacts;
};

struct CsopReduction {
  CspInstance instance;
  UnaryCostFunction weights;
  ReductionArtifacts artifacts;
};

/// One constraint per bag: all |U|^|chi| tuples filtered by every original
/// constraint whose scope fits in the bag. `d` decomposes primal(H(P)).
AcyclicReduction acyclic_from_tree_decomposition(const CspInstance& instance, const TreeDecomposition& d,
                                                 double budget = 1e7);

/// One constraint per bag: projection onto chi(p) of the pairwise join of the
/// lambda(p) relations, filtered by every original constraint inside chi(p).
AcyclicReduction acyclic_from_ghd(const CspInstance& instance, const GeneralizedHypertreeDecomposition& d,
                                  double budget = 1e7);

/// Tuple weights move onto a private selector variable per constraint.
CsopReduction wcsp_to_csop(const CspInstance& instance);

/// Carries a GHD of H(P) over to H(P') of wcsp_to_csop: each constraint gets a leaf
/// bag S_v + {D_v} below the first bag containing S_v. The width is unchanged.
GeneralizedHypertreeDecomposition lift_ghd_through_wcsp(const CspInstance& original,
                                                        const GeneralizedHypertreeDecomposition& d,
                                                        const CsopReduction& reduction);

struct MaxCspReduction {
  CspInstance instance;
  UnaryCostFunction weights;
  JoinTree join_tree;
  ReductionArtifacts artifacts;
};

/// Max-CSP to CSOP over a tree decomposition of incidence(H(P)) (vertex layout of
/// incidence_graph). The minimal CSOP cost equals the minimal total violation cost.
MaxCspReduction maxcsp_to_csop(const CspInstance& instance, const TreeDecomposition& d, double budget = 1e7);

}  // namespace structcsp
