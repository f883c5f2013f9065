#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "structcsp/hypergraph.hpp"
#include "structcsp/relation.hpp"

namespace structcsp {

/// Relations of an instance laid out on a join tree: node v holds the
/// intersection of every constraint whose scope is hyperedge(v), with rows in
/// canonical order. Throws InputError when the join tree is invalid for H(P).
struct JoinTreeRelations {
  JoinTreeRelations(const CspInstance& instance, const JoinTree& tree);

  const CspInstance* instance;
  Hypergraph hypergraph;
  JoinTree join_tree;
  RootedTree rooted;
  std::vector<Relation> nodes;
  /// Tree node carrying each constraint (the first node for its hyperedge).
  std::vector<std::size_t> node_of_constraint;
};

struct ReducedInstance {
  CspInstance instance;
  JoinTree join_tree;
  /// Per tree node, relation after the bottom-up and top-down semijoin passes.
  std::vector<Relation> node_relations;
  /// Tree node carrying each constraint.
  std::vector<std::size_t> node_of_constraint;
  bool consistent = false;

  /// Reduced relation of constraint `c`, columns in the constraint's scope order.
  std::vector<Row> reduced_relation(std::size_t c) const;
};

/// Leaf-to-root semijoins; true iff the instance has a solution.
bool yannakakis_decide(const CspInstance& instance, const JoinTree& tree);

/// Bottom-up then top-down semijoins. The result is globally consistent.
ReducedInstance full_reduce(const CspInstance& instance, const JoinTree& tree);

/// Backtrack-free enumeration over a globally consistent reduction: root rows in
/// canonical order, then each node in preorder restricted to the rows
/// conforming with its parent's choice.
class SolutionEnumerator {
 public:
  /// Throws InputError if `reduced` is inconsistent.
  explicit SolutionEnumerator(const ReducedInstance& reduced);

  std::optional<Assignment> next();

  /// Times a node had no row conforming with its parent. Stays 0 on consistent input.
  std::size_t dead_ends() const noexcept { return dead_ends_; }

 private:
  /// Chooses rows for every depth >= `depth`, backtracking on a dead end.
  bool fill(std::size_t depth);
  bool advance(std::size_t depth);

  const ReducedInstance* reduced_;
  RootedTree rooted_;
  /// Per node: columns of the parent's relation and of its own that hold the shared variables.
  std::vector<std::vector<std::size_t>> parent_key_columns_;
  std::vector<std::vector<std::size_t>> child_key_columns_;
  /// Per node: row indices grouped by their shared-variable projection.
  std::vector<std::unordered_map<Row, std::vector<std::size_t>, RowHash>> groups_;
  /// Candidate rows and the cursor into them, per preorder depth.
  std::vector<const std::vector<std::size_t>*> candidates_;
  std::vector<std::size_t> cursor_;
  std::vector<std::size_t> root_rows_;
  bool started_ = false;
  bool exhausted_ = false;
  std::size_t dead_ends_ = 0;
};

/// Collects up to `limit` solutions (all when nullopt).
std::vector<Assignment> enumerate_solutions(const ReducedInstance& reduced,
                                            std::optional<std::size_t> limit = std::nullopt);

/// Semijoins every ordered pair of constraint relations until nothing changes.
/// Returns one relation per constraint (columns in scope order).
std::vector<std::vector<Row>> pairwise_consistency_fixpoint(const CspInstance& instance);

}  // namespace structcsp
