#include "structcsp/acyclic.hpp"

#include <algorithm>
#include <stdexcept>

#include "structcsp/errors.hpp"

namespace structcsp {

JoinTreeRelations::JoinTreeRelations(const CspInstance& inst, const JoinTree& tree)
    : instance(&inst), hypergraph(build_hypergraph(inst)), join_tree(tree), rooted(Tree{}) {
  if (auto check = check_join_tree(hypergraph, join_tree); !check)
    throw InputError("invalid join tree: " + check.message);
  rooted = RootedTree(join_tree.tree);

  const auto edge_of_constraint = constraint_edge_map(inst, hypergraph);
  std::vector<std::size_t> first_node(hypergraph.num_edges(), RootedTree::kNoParent);
  for (std::size_t p = join_tree.tree.size(); p-- > 0;) first_node[join_tree.edge_of_node[p]] = p;

  // Per hyperedge: intersection of every constraint with that scope.
  std::vector<std::optional<Relation>> per_edge(hypergraph.num_edges());
  for (std::size_t c = 0; c < inst.num_constraints(); ++c) {
    Relation r = relation_of(inst.constraint(c));
    auto& slot = per_edge[edge_of_constraint[c]];
    if (!slot) {
      slot = std::move(r);
    } else {
      intersect_with(*slot, r);
    }
  }
  for (auto& slot : per_edge) sort_canonical(*slot, inst);

  std::vector<std::size_t> uses(hypergraph.num_edges(), 0);
  for (std::size_t e : join_tree.edge_of_node) ++uses[e];
  nodes.reserve(join_tree.tree.size());
  for (std::size_t e : join_tree.edge_of_node) nodes.push_back(--uses[e] == 0 ? std::move(*per_edge[e]) : *per_edge[e]);
  node_of_constraint.reserve(inst.num_constraints());
  for (std::size_t c = 0; c < inst.num_constraints(); ++c)
    node_of_constraint.push_back(first_node[edge_of_constraint[c]]);
}

std::vector<Row> ReducedInstance::reduced_relation(std::size_t c) const {
  const Constraint& constraint = instance.constraint(c);
  const Relation& r = node_relations.at(node_of_constraint.at(c));
  const auto cols = column_positions(r.scope, constraint.scope);
  std::vector<Row> out;
  out.reserve(r.rows.size());
  for (const Row& row : r.rows) out.push_back(project_row(row, cols));
  return out;
}

namespace {

void bottom_up(JoinTreeRelations& jt) {
  for (std::size_t p : jt.rooted.postorder)
    if (jt.rooted.parent[p] != RootedTree::kNoParent) semijoin(jt.nodes[jt.rooted.parent[p]], jt.nodes[p]);
}

}  // namespace

bool yannakakis_decide(const CspInstance& instance, const JoinTree& tree) {
  JoinTreeRelations jt(instance, tree);
  if (jt.nodes.empty()) return true;
  bottom_up(jt);
  return !jt.nodes[jt.join_tree.tree.root].empty();
}

ReducedInstance full_reduce(const CspInstance& instance, const JoinTree& tree) {
  JoinTreeRelations jt(instance, tree);
  bottom_up(jt);
  for (std::size_t p : jt.rooted.preorder)
    for (std::size_t c : jt.rooted.children[p]) semijoin(jt.nodes[c], jt.nodes[p]);
  ReducedInstance out{instance, tree, std::move(jt.nodes), std::move(jt.node_of_constraint), false};
  out.consistent = out.node_relations.empty() || !out.node_relations[tree.tree.root].empty();
  return out;
}

SolutionEnumerator::SolutionEnumerator(const ReducedInstance& reduced)
    : reduced_(&reduced), rooted_(reduced.join_tree.tree) {
  if (!reduced.consistent) throw InputError("cannot enumerate solutions of an inconsistent instance");
  const std::size_t n = reduced.node_relations.size();
  parent_key_columns_.resize(n);
  child_key_columns_.resize(n);
  groups_.resize(n);
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t parent = rooted_.parent[p];
    if (parent == RootedTree::kNoParent) continue;
    const Relation& mine = reduced.node_relations[p];
    const Relation& theirs = reduced.node_relations[parent];
    const auto shared = shared_variables(mine.scope, theirs.scope);
    parent_key_columns_[p] = column_positions(theirs.scope, shared);
    child_key_columns_[p] = column_positions(mine.scope, shared);
    for (std::size_t i = 0; i < mine.rows.size(); ++i)
      groups_[p][project_row(mine.rows[i], child_key_columns_[p])].push_back(i);
  }
  if (n > 0) {
    root_rows_.resize(reduced.node_relations[reduced.join_tree.tree.root].size());
    for (std::size_t i = 0; i < root_rows_.size(); ++i) root_rows_[i] = i;
  }
  candidates_.assign(n, nullptr);
  cursor_.assign(n, 0);
}

bool SolutionEnumerator::fill(std::size_t depth) {
  const auto& order = rooted_.preorder;
  while (depth < order.size()) {
    const std::size_t p = order[depth];
    const std::size_t parent = rooted_.parent[p];
    const std::vector<std::size_t>* rows = &root_rows_;
    if (parent != RootedTree::kNoParent) {
      const Row& chosen = reduced_->node_relations[parent].rows[(*candidates_[parent])[cursor_[parent]]];
      auto it = groups_[p].find(project_row(chosen, parent_key_columns_[p]));
      rows = it == groups_[p].end() ? nullptr : &it->second;
    }
    if (rows == nullptr || rows->empty()) {
      ++dead_ends_;
      return depth > 0 && advance(depth - 1);
    }
    candidates_[p] = rows;
    cursor_[p] = 0;
    ++depth;
  }
  return true;
}

// Moves the cursor at `depth` (or a shallower one) forward; the deeper levels are refilled by fill().
bool SolutionEnumerator::advance(std::size_t depth) {
  const auto& order = rooted_.preorder;
  for (std::size_t d = depth + 1; d-- > 0;) {
    const std::size_t p = order[d];
    if (++cursor_[p] < candidates_[p]->size()) return fill(d + 1);
  }
  return false;
}

std::optional<Assignment> SolutionEnumerator::next() {
  if (exhausted_) return std::nullopt;
  const auto& order = rooted_.preorder;
  bool ok;
  if (!started_) {
    started_ = true;
    if (order.empty()) {
      exhausted_ = true;
      return Assignment(reduced_->instance.num_variables(), 0);
    }
    ok = fill(0);
  } else {
    ok = advance(order.size() - 1);
  }
  if (!ok) {
    exhausted_ = true;
    return std::nullopt;
  }
  Assignment theta(reduced_->instance.num_variables(), 0);
  for (std::size_t p : order) {
    const Relation& r = reduced_->node_relations[p];
    const Row& row = r.rows[(*candidates_[p])[cursor_[p]]];
    for (std::size_t i = 0; i < r.scope.size(); ++i) theta[r.scope[i]] = row[i];
  }
  return theta;
}

std::vector<Assignment> enumerate_solutions(const ReducedInstance& reduced, std::optional<std::size_t> limit) {
  std::vector<Assignment> out;
  if (!reduced.consistent) return out;
  SolutionEnumerator it(reduced);
  while (!limit || out.size() < *limit) {
    auto theta = it.next();
    if (!theta) break;
    out.push_back(std::move(*theta));
  }
  return out;
}

std::vector<std::vector<Row>> pairwise_consistency_fixpoint(const CspInstance& instance) {
  std::vector<Relation> rel;
  rel.reserve(instance.num_constraints());
  for (const Constraint& c : instance.constraints()) rel.push_back(relation_of(c));
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < rel.size(); ++i)
      for (std::size_t j = 0; j < rel.size(); ++j)
        if (i != j && semijoin(rel[i], rel[j])) changed = true;
  }
  std::vector<std::vector<Row>> out;
  out.reserve(rel.size());
  for (std::size_t c = 0; c < rel.size(); ++c) {
    sort_canonical(rel[c], instance);
    const auto cols = column_positions(rel[c].scope, instance.constraint(c).scope);
    std::vector<Row> rows;
    for (const Row& row : rel[c].rows) rows.push_back(project_row(row, cols));
    out.push_back(std::move(rows));
  }
  return out;
}

}  // namespace structcsp
