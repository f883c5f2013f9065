#include "structcsp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "structcsp/errors.hpp"

namespace structcsp::oracle {

namespace {

void guard(const CspInstance& instance) {
  const double count =
      std::pow(static_cast<double>(instance.domain_size()), static_cast<double>(instance.num_variables()));
  if (count > kAssignmentLimit)
    throw TooLarge("brute force over " + std::to_string(count) + " assignments exceeds the limit of " +
                   std::to_string(kAssignmentLimit));
}

// Visits every total assignment in canonical order: the variable with the
// smallest name varies slowest, values step in name order.
void for_each_assignment(const CspInstance& instance, const std::function<void(const Assignment&)>& f) {
  guard(instance);
  const std::size_t n = instance.num_variables();
  const std::size_t d = instance.domain_size();
  if (n > 0 && d == 0) return;
  std::vector<VarId> vars(n);
  std::iota(vars.begin(), vars.end(), VarId{0});
  std::sort(vars.begin(), vars.end(),
            [&](VarId a, VarId b) { return instance.variable_rank(a) < instance.variable_rank(b); });
  std::vector<ValueId> values(d);
  std::iota(values.begin(), values.end(), ValueId{0});
  std::sort(values.begin(), values.end(),
            [&](ValueId a, ValueId b) { return instance.value_rank(a) < instance.value_rank(b); });

  std::vector<std::size_t> digit(n, 0);
  Assignment theta(n, d > 0 ? values[0] : 0);
  while (true) {
    f(theta);
    std::size_t i = n;
    while (i > 0) {
      const VarId v = vars[i - 1];
      if (++digit[i - 1] < d) {
        theta[v] = values[digit[i - 1]];
        break;
      }
      digit[i - 1] = 0;
      theta[v] = values[0];
      --i;
    }
    if (i == 0) return;
  }
}

bool satisfies(const CspInstance& instance, const Assignment& theta) {
  return evaluate_assignment(instance, theta).satisfies;
}

}  // namespace

std::vector<Assignment> brute_force_solutions(const CspInstance& instance) {
  std::vector<Assignment> out;
  for_each_assignment(instance, [&](const Assignment& theta) {
    if (satisfies(instance, theta)) out.push_back(theta);
  });
  return out;
}

std::optional<Optimum> brute_force_optimal(const CspInstance& instance, const UnaryCostFunction& w,
                                           const CostMonoid& monoid) {
  std::optional<Optimum> best;
  for_each_assignment(instance, [&](const Assignment& theta) {
    if (!satisfies(instance, theta)) return;
    Cost c = unary_cost(w, theta, monoid);
    if (!best || monoid.less(c, best->cost)) best = Optimum{theta, std::move(c)};
  });
  return best;
}

std::optional<Optimum> brute_force_weighted_optimal(const CspInstance& instance, const CostMonoid& monoid) {
  for (const Constraint& c : instance.constraints())
    if (!c.tuple_weights) throw InputError("constraint '" + c.name + "' has no tuple weights");
  std::optional<Optimum> best;
  for_each_assignment(instance, [&](const Assignment& theta) {
    Cost total = monoid.identity();
    for (const Constraint& c : instance.constraints()) {
      const auto t = matching_tuple(c, theta);
      if (!t) return;
      total = monoid.combine(total, Cost((*c.tuple_weights)[*t]));
    }
    if (!best || monoid.less(total, best->cost)) best = Optimum{theta, std::move(total)};
  });
  return best;
}

MinViolation brute_force_min_violation(const CspInstance& instance) {
  std::optional<MinViolation> best;
  for_each_assignment(instance, [&](const Assignment& theta) {
    const EvaluationReport report = evaluate_assignment(instance, theta);
    if (!best || report.violation_cost < best->violation_cost)
      best = MinViolation{theta, report.violation_degree, report.violation_cost};
  });
  if (!best) throw InputError("instance has no assignments (empty domain)");
  return *best;
}

std::optional<JoinTree> exhaustive_join_tree_search(const Hypergraph& h) {
  const std::size_t m = h.num_edges();
  if (m > kJoinTreeEdgeLimit)
    throw TooLarge("exhaustive join tree search supports at most " + std::to_string(kJoinTreeEdgeLimit) +
                   " hyperedges, got " + std::to_string(m));
  JoinTree candidate;
  candidate.tree.node_names = Tree::default_names(m);
  candidate.edge_of_node.resize(m);
  std::iota(candidate.edge_of_node.begin(), candidate.edge_of_node.end(), std::size_t{0});
  if (m <= 1) return check_join_tree(h, candidate) ? std::optional(candidate) : std::nullopt;
  if (m == 2) {
    candidate.tree.edges = {{0, 1}};
    return check_join_tree(h, candidate) ? std::optional(candidate) : std::nullopt;
  }

  // Every labelled tree on m nodes corresponds to one Pruefer sequence of length m-2.
  std::vector<std::size_t> seq(m - 2, 0);
  while (true) {
    std::vector<std::size_t> degree(m, 1);
    for (auto x : seq) ++degree[x];
    candidate.tree.edges.clear();
    for (auto x : seq) {
      std::size_t leaf = 0;
      while (degree[leaf] != 1) ++leaf;
      candidate.tree.edges.emplace_back(std::min(leaf, x), std::max(leaf, x));
      --degree[leaf];
      --degree[x];
    }
    std::size_t a = m, b = m;
    for (std::size_t v = 0; v < m; ++v)
      if (degree[v] == 1) (a == m ? a : b) = v;
    candidate.tree.edges.emplace_back(a, b);
    if (check_join_tree(h, candidate)) return candidate;

    std::size_t i = seq.size();
    while (i > 0) {
      if (++seq[i - 1] < m) break;
      seq[--i] = 0;
    }
    if (i == 0) return std::nullopt;
  }
}

}  // namespace structcsp::oracle
