#include "structcsp/optimize.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "structcsp/errors.hpp"
#include "structcsp/reduce.hpp"

namespace structcsp {

bool conforms(const Substitution& a, const Substitution& b, std::span<const VarId> shared) {
  auto value_in = [](const Substitution& s, VarId x) -> std::optional<ValueId> {
    for (const Binding& binding : s)
      if (binding.var == x) return binding.value;
    return std::nullopt;
  };
  for (VarId x : shared)
    if (value_in(a, x) != value_in(b, x)) return false;
  return true;
}

namespace {

enum class Attribution { owner, subtractive };

void project_into(const Row& row, const std::vector<std::size_t>& columns, Row& out) {
  out.resize(columns.size());
  for (std::size_t i = 0; i < columns.size(); ++i) out[i] = row[columns[i]];
}

struct BestInGroup {
  Cost residual;
  std::size_t row;
};

DpTable run_bottom_up(const CspInstance& instance, const UnaryCostFunction& w, const JoinTree& tree,
                      const CostMonoid& monoid, Attribution mode) {
  JoinTreeRelations jt(instance, tree);
  DpTable table{tree, jt.rooted, {}, true};
  const std::size_t n = jt.nodes.size();
  table.nodes.resize(n);

  auto weight = [&](VarId x, ValueId u) { return Cost(w.get(x, u)); };

  for (std::size_t v : jt.rooted.postorder) {
    const Relation& rel = jt.nodes[v];
    const std::size_t parent = jt.rooted.parent[v];
    const auto& children = jt.rooted.children[v];

    // Columns shared with the parent; the other columns are owned here.
    std::vector<bool> shared_col(rel.scope.size(), false);
    if (parent != RootedTree::kNoParent) {
      const auto& pscope = jt.nodes[parent].scope;
      for (std::size_t i = 0; i < rel.scope.size(); ++i)
        shared_col[i] = std::binary_search(pscope.begin(), pscope.end(), rel.scope[i]);
    }

    // Per child: key columns in this relation and the cheapest conforming row per key.
    Row key;
    std::vector<std::vector<std::size_t>> key_cols(children.size());
    std::vector<std::unordered_map<Row, BestInGroup, RowHash>> best(children.size());
    for (std::size_t slot = 0; slot < children.size(); ++slot) {
      const std::size_t c = children[slot];
      const DpNode& child = table.nodes[c];
      const auto shared = shared_variables(rel.scope, child.relation.scope);
      key_cols[slot] = column_positions(rel.scope, shared);
      const auto child_cols = column_positions(child.relation.scope, shared);
      best[slot].reserve(child.relation.rows.size());
      for (std::size_t i = 0; i < child.relation.rows.size(); ++i) {
        project_into(child.relation.rows[i], child_cols, key);
        auto it = best[slot].find(key);
        if (it == best[slot].end()) {
          best[slot].emplace(key, BestInGroup{child.residual[i], i});
        } else if (monoid.less(child.residual[i], it->second.residual)) {
          it->second = BestInGroup{child.residual[i], i};
        }
      }
    }

    DpNode& node = table.nodes[v];
    node.relation.scope = rel.scope;
    node.best_child.assign(children.size(), {});
    std::vector<std::size_t> picks;
    picks.reserve(children.size());
    for (const Row& row : rel.rows) {
      Cost own = monoid.identity();
      Cost shared_part = monoid.identity();
      for (std::size_t i = 0; i < row.size(); ++i) {
        const Cost c = weight(rel.scope[i], row[i]);
        if (shared_col[i]) {
          shared_part = monoid.combine(shared_part, c);
        } else {
          own = monoid.combine(own, c);
        }
      }
      Cost acc = mode == Attribution::owner ? own : monoid.combine(own, shared_part);
      picks.clear();
      bool alive = true;
      for (std::size_t slot = 0; slot < children.size(); ++slot) {
        project_into(row, key_cols[slot], key);
        auto it = best[slot].find(key);
        if (it == best[slot].end()) {
          alive = false;
          break;
        }
        picks.push_back(it->second.row);
        acc = monoid.combine(acc, it->second.residual);
      }
      if (!alive) continue;
      node.relation.rows.push_back(row);
      for (std::size_t slot = 0; slot < children.size(); ++slot) node.best_child[slot].push_back(picks[slot]);
      if (mode == Attribution::owner) {
        node.residual.push_back(acc);
        node.label.push_back(monoid.combine(acc, shared_part));
      } else {
        // acc is the full label here; the residual removes the part fixed by the parent.
        node.label.push_back(acc);
        node.residual.push_back(acc - shared_part);
      }
    }
    if (node.relation.rows.empty()) table.satisfiable = false;
  }
  return table;
}

}  // namespace

DpTable compute_dp_table(const CspInstance& instance, const UnaryCostFunction& w, const JoinTree& tree,
                         const CostMonoid& monoid) {
  return run_bottom_up(instance, w, tree, monoid, Attribution::owner);
}

DpTable compute_dp_table_subtractive(const CspInstance& instance, const UnaryCostFunction& w,
                                     const JoinTree& tree) {
  return run_bottom_up(instance, w, tree, CostMonoid::sum(), Attribution::subtractive);
}

SolveOutcome extract_optimal_solution(const CspInstance& instance, const DpTable& table) {
  if (table.nodes.empty()) return OptimalSolution{Assignment(instance.num_variables(), 0), Cost(0)};
  if (!table.satisfiable) return std::nullopt;
  const std::size_t root = table.join_tree.tree.root;
  const DpNode& r = table.nodes[root];
  if (r.relation.rows.empty()) return std::nullopt;
  // Rows are in canonical order, so the first minimum is the canonical tie-break.
  std::size_t best = 0;
  for (std::size_t i = 1; i < r.label.size(); ++i)
    if (r.label[i] < r.label[best]) best = i;

  std::vector<std::size_t> chosen(table.nodes.size(), 0);
  chosen[root] = best;
  Assignment theta(instance.num_variables(), 0);
  for (std::size_t v : table.rooted.preorder) {
    const DpNode& node = table.nodes[v];
    const Row& row = node.relation.rows[chosen[v]];
    for (std::size_t i = 0; i < row.size(); ++i) theta[node.relation.scope[i]] = row[i];
    const auto& children = table.rooted.children[v];
    for (std::size_t slot = 0; slot < children.size(); ++slot) chosen[children[slot]] = node.best_child[slot][chosen[v]];
  }
  return OptimalSolution{std::move(theta), r.label[best]};
}

SolveOutcome compute_optimal_solution(const CspInstance& instance, const UnaryCostFunction& w,
                                      const JoinTree& tree, const CostMonoid& monoid) {
  DpTable table = compute_dp_table(instance, w, tree, monoid);
  SolveOutcome out = extract_optimal_solution(instance, table);
  if (out && table.nodes.empty()) out->cost = monoid.identity();
  return out;
}

SolveOutcome solve_with_decomposition(const CspInstance& instance, const UnaryCostFunction& w,
                                      const GeneralizedHypertreeDecomposition& d, const CostMonoid& monoid,
                                      double budget) {
  AcyclicReduction reduction = acyclic_from_ghd(instance, d, budget);
  SolveOutcome out = compute_optimal_solution(reduction.instance, w, reduction.join_tree, monoid);
  if (out) out->assignment = reduction.artifacts.back_map(out->assignment);
  return out;
}

}  // namespace structcsp
