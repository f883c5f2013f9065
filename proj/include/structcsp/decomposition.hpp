#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "structcsp/hypergraph.hpp"

namespace structcsp {

/// <T, chi> over some graph's vertex indices.
struct TreeDecomposition {
  Tree tree;
  /// Sorted vertex indices per tree node.
  std::vector<std::vector<std::size_t>> bags;

  /// max |chi(p)| - 1 (0 for an empty decomposition).
  std::size_t width() const;
};

/// <T, chi, lambda>; lambda holds hyperedge indices of the target hypergraph.
struct GeneralizedHypertreeDecomposition {
  TreeDecomposition base;
  std::vector<std::vector<std::size_t>> lambda;

  /// max |lambda(p)|.
  std::size_t width() const;
};

struct DecompositionCheck {
  bool valid = false;
  std::string message;
  /// Offending tree node and graph vertex, when applicable.
  std::optional<std::size_t> node;
  std::optional<std::size_t> vertex;
  /// Offending hyperedge (descendant condition only).
  std::optional<std::size_t> edge;
  /// Width on success.
  std::size_t width = 0;
  explicit operator bool() const noexcept { return valid; }
};

/// Tree decomposition induced by eliminating vertices in `order` (a permutation).
/// Bags that are subsets of a neighbouring bag are contracted away; the result
/// is rooted at the bag whose sorted vertex names are lexicographically smallest.
TreeDecomposition elimination_tree_decomposition(const Graph& g, std::span<const std::size_t> order);

/// Min-fill elimination order, ties broken by lexicographic vertex name.
std::vector<std::size_t> minfill_order(const Graph& g);

/// Decomposition from the min-fill order, validated before return.
TreeDecomposition minfill_tree_decomposition(const Graph& g);

/// Vertex coverage, edge coverage and connectedness; on failure names the
/// first violated condition with its witness.
DecompositionCheck check_tree_decomposition(const Graph& g, const TreeDecomposition& d);

inline constexpr std::size_t kExactTreewidthLimit = 16;

/// Exact treewidth by memoized search over vertex subsets. Throws TooLarge above the limit.
std::size_t exact_treewidth(const Graph& g);

/// Per bag, greedy set cover by hyperedges (largest residual intersection first,
/// ties by smallest edge id).
GeneralizedHypertreeDecomposition greedy_cover_lambda(const Hypergraph& h, const TreeDecomposition& d);

/// Min-fill on the primal graph followed by the greedy cover.
GeneralizedHypertreeDecomposition heuristic_ghd(const Hypergraph& h);

/// Width-1 decomposition whose bags are the hyperedges of a join tree.
GeneralizedHypertreeDecomposition ghd_from_join_tree(const Hypergraph& h, const JoinTree& t);

/// Validates the base against primal(h) and the covering condition; width = max |lambda(p)|.
DecompositionCheck check_ghd(const Hypergraph& h, const GeneralizedHypertreeDecomposition& d);

/// For every node p and h in lambda(p): h intersected with chi(T_p) lies inside chi(p).
DecompositionCheck check_descendant_condition(const Hypergraph& h,
                                              const GeneralizedHypertreeDecomposition& d);

}  // namespace structcsp
