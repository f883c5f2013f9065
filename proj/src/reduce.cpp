#include "structcsp/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <unordered_set>

#include "structcsp/errors.hpp"
#include "structcsp/hypergraph.hpp"
#include "structcsp/relation.hpp"

namespace structcsp {

std::string fresh_tuple_selector_name(std::size_t constraint) { return "__D" + std::to_string(constraint + 1); }

std::string fresh_scope_variable_name(std::size_t constraint) { return "__S" + std::to_string(constraint + 1); }

std::string fresh_tuple_value_name(std::size_t constraint, std::size_t tuple) {
  return "__u" + std::to_string(constraint + 1) + "_" + std::to_string(tuple + 1);
}

Assignment ReductionArtifacts::back_map(const Assignment& transformed) const {
  const std::size_t expected = original_variables.size() + fresh_variables.size();
  if (transformed.size() != expected)
    throw InputError("assignment has " + std::to_string(transformed.size()) + " variables, expected " +
                     std::to_string(expected));
  return Assignment(transformed.begin(), transformed.begin() + static_cast<std::ptrdiff_t>(original_variables.size()));
}

namespace {

// Calls f(row) for every row over `arity` columns with values 0..domain-1.
template <class F>
void for_each_row(std::size_t arity, std::size_t domain, F&& f) {
  if (domain == 0 && arity > 0) return;
  Row row(arity, 0);
  while (true) {
    f(static_cast<const Row&>(row));
    std::size_t i = arity;
    while (i > 0) {
      if (++row[i - 1] < domain) break;
      row[--i] = 0;
    }
    if (i == 0) return;
  }
}

// Constraint tuples projected onto sorted scope, for membership tests.
struct ConstraintIndex {
  std::vector<VarId> scope;  // sorted
  RowSet rows;
};

std::vector<ConstraintIndex> index_constraints(const CspInstance& instance) {
  std::vector<ConstraintIndex> out;
  out.reserve(instance.num_constraints());
  for (const Constraint& c : instance.constraints()) {
    Relation r = relation_of(c);
    out.push_back({r.scope, RowSet(r.rows.begin(), r.rows.end())});
  }
  return out;
}

bool includes(const std::vector<std::size_t>& bag, const std::vector<VarId>& scope) {
  return std::includes(bag.begin(), bag.end(), scope.begin(), scope.end());
}

// Keeps rows over `bag` consistent with every constraint whose scope fits in it.
void filter_by_contained(Relation& r, const std::vector<ConstraintIndex>& index,
                         const std::vector<std::size_t>& contained) {
  for (std::size_t c : contained) {
    const auto cols = column_positions(r.scope, index[c].scope);
    std::erase_if(r.rows, [&](const Row& row) { return index[c].rows.count(project_row(row, cols)) == 0; });
  }
}

void ensure_fresh(const CspInstance& instance, const std::string& name) {
  if (instance.find_variable(name) || instance.find_value(name))
    throw InputError("fresh name '" + name + "' collides with a name of the instance");
}

// Builds P' with one constraint per tree node and the matching join tree.
AcyclicReduction assemble(const CspInstance& instance, const Tree& tree, std::vector<Relation> node_relations,
                          ReductionArtifacts artifacts) {
  std::vector<Constraint> constraints;
  constraints.reserve(node_relations.size());
  for (std::size_t p = 0; p < node_relations.size(); ++p) {
    if (node_relations[p].scope.empty())
      throw InputError("tree node '" + tree.node_names[p] + "' has an empty bag");
    constraints.push_back(Constraint{tree.node_names[p], node_relations[p].scope, std::move(node_relations[p].rows),
                                     std::nullopt, std::nullopt});
  }
  CspInstance out(instance.variables(), instance.domain(), std::move(constraints));
  JoinTree jt{tree, {}};
  if (out.num_constraints() > 0) jt.edge_of_node = constraint_edge_map(out, build_hypergraph(out));
  return AcyclicReduction{std::move(out), std::move(jt), std::move(artifacts)};
}

std::vector<std::vector<std::size_t>> constraint_nodes(const std::vector<ConstraintIndex>& index,
                                                       const std::vector<std::vector<std::size_t>>& bags,
                                                       const CspInstance& instance) {
  std::vector<std::vector<std::size_t>> nodes(index.size());
  for (std::size_t c = 0; c < index.size(); ++c) {
    for (std::size_t p = 0; p < bags.size(); ++p)
      if (includes(bags[p], index[c].scope)) nodes[c].push_back(p);
    if (nodes[c].empty())
      throw InputError("scope of constraint '" + instance.constraint(c).name + "' fits in no bag");
  }
  return nodes;
}

std::vector<std::vector<std::size_t>> contained_per_node(const std::vector<std::vector<std::size_t>>& nodes,
                                                         std::size_t num_nodes) {
  std::vector<std::vector<std::size_t>> out(num_nodes);
  for (std::size_t c = 0; c < nodes.size(); ++c)
    for (std::size_t p : nodes[c]) out[p].push_back(c);
  return out;
}

}  // namespace

AcyclicReduction acyclic_from_tree_decomposition(const CspInstance& instance, const TreeDecomposition& d,
                                                 double budget) {
  const Graph g = primal_graph(build_hypergraph(instance));
  if (auto check = check_tree_decomposition(g, d); !check)
    throw InputError("invalid tree decomposition: " + check.message);

  const double u = static_cast<double>(instance.domain_size());
  std::size_t widest = 0;
  for (const auto& bag : d.bags) widest = std::max(widest, bag.size());
  const double estimate = std::pow(u, static_cast<double>(widest));
  if (estimate > budget)
    throw BudgetExceeded("tree-decomposition acyclicization needs |U|^(k+1) = " + std::to_string(estimate) +
                             " tuples per bag, budget is " + std::to_string(budget),
                         estimate, budget);

  const auto index = index_constraints(instance);
  ReductionArtifacts artifacts;
  artifacts.kind = "tree-decomposition";
  artifacts.original_variables = instance.variables();
  artifacts.constraint_nodes = constraint_nodes(index, d.bags, instance);
  artifacts.node_relation_bound = estimate;
  const auto contained = contained_per_node(artifacts.constraint_nodes, d.bags.size());

  std::vector<Relation> relations(d.bags.size());
  for (std::size_t p = 0; p < d.bags.size(); ++p) {
    Relation& r = relations[p];
    r.scope.assign(d.bags[p].begin(), d.bags[p].end());
    for_each_row(r.scope.size(), instance.domain_size(), [&](const Row& row) { r.rows.push_back(row); });
    artifacts.largest_node_relation = std::max(artifacts.largest_node_relation, r.rows.size());
    filter_by_contained(r, index, contained[p]);
  }
  return assemble(instance, d.tree, std::move(relations), std::move(artifacts));
}

AcyclicReduction acyclic_from_ghd(const CspInstance& instance, const GeneralizedHypertreeDecomposition& d,
                                  double budget) {
  const Hypergraph h = build_hypergraph(instance);
  if (auto check = check_ghd(h, d); !check) throw InputError("invalid decomposition: " + check.message);

  const auto index = index_constraints(instance);
  const auto edge_of_constraint = constraint_edge_map(instance, h);
  std::vector<std::optional<Relation>> per_edge(h.num_edges());
  for (std::size_t c = 0; c < instance.num_constraints(); ++c) {
    Relation r = relation_of(instance.constraint(c));
    auto& slot = per_edge[edge_of_constraint[c]];
    if (!slot) {
      slot = std::move(r);
    } else {
      intersect_with(*slot, r);
    }
  }

  ReductionArtifacts artifacts;
  artifacts.kind = "ghd";
  artifacts.original_variables = instance.variables();
  artifacts.constraint_nodes = constraint_nodes(index, d.base.bags, instance);
  artifacts.node_relation_bound =
      std::pow(static_cast<double>(instance.largest_relation()), static_cast<double>(d.width()));
  const auto contained = contained_per_node(artifacts.constraint_nodes, d.base.bags.size());

  std::vector<Relation> relations(d.base.bags.size());
  for (std::size_t p = 0; p < d.base.bags.size(); ++p) {
    const auto& lambda = d.lambda[p];
    Relation joined = *per_edge[lambda.front()];
    for (std::size_t i = 1; i < lambda.size(); ++i) {
      joined = natural_join(joined, *per_edge[lambda[i]]);
      if (static_cast<double>(joined.size()) > budget)
        throw BudgetExceeded("join at node '" + d.base.tree.node_names[p] + "' exceeds the budget of " +
                                 std::to_string(budget) + " tuples",
                             static_cast<double>(joined.size()), budget);
    }
    artifacts.largest_node_relation = std::max(artifacts.largest_node_relation, joined.size());
    std::vector<VarId> chi(d.base.bags[p].begin(), d.base.bags[p].end());
    relations[p] = project(joined, chi);
    filter_by_contained(relations[p], index, contained[p]);
  }
  return assemble(instance, d.base.tree, std::move(relations), std::move(artifacts));
}

CsopReduction wcsp_to_csop(const CspInstance& instance) {
  std::vector<std::string> variables = instance.variables();
  std::vector<std::string> domain = instance.domain();
  ReductionArtifacts artifacts;
  artifacts.kind = "wcsp";
  artifacts.original_variables = instance.variables();

  std::vector<Constraint> constraints;
  std::vector<std::pair<std::size_t, Rational>> weights;  // (fresh value, weight) per tuple
  for (std::size_t c = 0; c < instance.num_constraints(); ++c) {
    const Constraint& src = instance.constraint(c);
    if (!src.tuple_weights) throw InputError("constraint '" + src.name + "' has no tuple weights");
    const std::string selector = fresh_tuple_selector_name(c);
    ensure_fresh(instance, selector);
    const auto selector_id = static_cast<VarId>(variables.size());
    variables.push_back(selector);
    artifacts.fresh_variables.push_back({selector, c});

    Constraint out{src.name, src.scope, {}, std::nullopt, src.violation_cost};
    out.scope.push_back(selector_id);
    for (std::size_t t = 0; t < src.tuples.size(); ++t) {
      const std::string value = fresh_tuple_value_name(c, t);
      ensure_fresh(instance, value);
      const auto value_id = static_cast<ValueId>(domain.size());
      domain.push_back(value);
      artifacts.fresh_values.push_back({value, c, t});
      Row row = src.tuples[t];
      row.push_back(value_id);
      out.tuples.push_back(std::move(row));
      weights.emplace_back(value_id, (*src.tuple_weights)[t]);
    }
    constraints.push_back(std::move(out));
  }

  CsopReduction r{CspInstance(std::move(variables), std::move(domain), std::move(constraints)), {},
                  std::move(artifacts)};
  // Selector of constraint c is variable |Var| + c; each fresh value belongs to one constraint.
  for (const FreshValue& fv : r.artifacts.fresh_values) {
    const auto var = static_cast<VarId>(instance.num_variables() + fv.constraint);
    const auto value = *r.instance.find_value(fv.name);
    r.weights.set(var, value, (*instance.constraint(fv.constraint).tuple_weights)[fv.tuple]);
  }
  return r;
}

GeneralizedHypertreeDecomposition lift_ghd_through_wcsp(const CspInstance& original,
                                                        const GeneralizedHypertreeDecomposition& d,
                                                        const CsopReduction& reduction) {
  const Hypergraph h = build_hypergraph(original);
  if (auto check = check_ghd(h, d); !check) throw InputError("invalid decomposition: " + check.message);
  const Hypergraph lifted = build_hypergraph(reduction.instance);
  const auto lifted_edge = constraint_edge_map(reduction.instance, lifted);
  const auto edge_of_constraint = constraint_edge_map(original, h);

  // Original hyperedge -> edge of the first constraint with that scope in P'.
  std::vector<std::size_t> representative(h.num_edges(), lifted.num_edges());
  for (std::size_t c = original.num_constraints(); c-- > 0;) representative[edge_of_constraint[c]] = lifted_edge[c];

  GeneralizedHypertreeDecomposition out = d;
  for (auto& lambda : out.lambda)
    for (auto& e : lambda) e = representative[e];

  std::unordered_set<std::string> taken(d.base.tree.node_names.begin(), d.base.tree.node_names.end());
  for (std::size_t c = 0; c < original.num_constraints(); ++c) {
    std::vector<std::size_t> scope(original.constraint(c).scope.begin(), original.constraint(c).scope.end());
    std::sort(scope.begin(), scope.end());
    std::size_t host = d.base.bags.size();
    for (std::size_t p = 0; p < d.base.bags.size() && host == d.base.bags.size(); ++p)
      if (std::includes(d.base.bags[p].begin(), d.base.bags[p].end(), scope.begin(), scope.end())) host = p;
    if (host == d.base.bags.size())
      throw InputError("scope of constraint '" + original.constraint(c).name + "' fits in no bag");
    std::string name = "d" + std::to_string(c + 1);
    while (taken.count(name)) name += "'";
    taken.insert(name);
    const std::size_t leaf = out.base.bags.size();
    out.base.tree.node_names.push_back(name);
    out.base.tree.edges.emplace_back(host, leaf);
    scope.push_back(original.num_variables() + c);
    out.base.bags.push_back(std::move(scope));
    out.lambda.push_back({lifted_edge[c]});
  }
  return out;
}

MaxCspReduction maxcsp_to_csop(const CspInstance& instance, const TreeDecomposition& d, double budget) {
  const Hypergraph h = build_hypergraph(instance);
  const Graph g = incidence_graph(h);
  if (auto check = check_tree_decomposition(g, d); !check)
    throw InputError("invalid decomposition of the incidence graph: " + check.message);

  const std::size_t n = instance.num_variables();
  const std::size_t q = instance.num_constraints();
  const auto edge_of_constraint = constraint_edge_map(instance, h);
  std::vector<std::vector<std::size_t>> constraints_of_edge(h.num_edges());
  for (std::size_t c = 0; c < q; ++c) constraints_of_edge[edge_of_constraint[c]].push_back(c);

  std::vector<std::string> variables = instance.variables();
  std::vector<std::string> domain = instance.domain();
  ReductionArtifacts artifacts;
  artifacts.kind = "maxcsp";
  artifacts.original_variables = instance.variables();
  artifacts.sentinel = std::string(kUnsatValue);
  ensure_fresh(instance, std::string(kUnsatValue));
  const auto unsat = static_cast<ValueId>(domain.size());
  domain.emplace_back(kUnsatValue);

  std::vector<std::vector<ValueId>> tuple_value(q);
  for (std::size_t c = 0; c < q; ++c) {
    const std::string name = fresh_scope_variable_name(c);
    ensure_fresh(instance, name);
    variables.push_back(name);
    artifacts.fresh_variables.push_back({name, c});
    for (std::size_t t = 0; t < instance.constraint(c).tuples.size(); ++t) {
      const std::string value = fresh_tuple_value_name(c, t);
      ensure_fresh(instance, value);
      tuple_value[c].push_back(static_cast<ValueId>(domain.size()));
      domain.push_back(value);
      artifacts.fresh_values.push_back({value, c, t});
    }
  }

  // Each bag binds its ordinary variables plus one scope-variable per constraint of its hyperedge nodes.
  std::size_t widest = 0, r_max = instance.largest_relation();
  for (const auto& bag : d.bags) {
    std::size_t bound_vars = 0;
    for (std::size_t x : bag) bound_vars += x < n ? 1 : constraints_of_edge[x - n].size();
    widest = std::max(widest, bound_vars);
  }
  const double per_value = static_cast<double>(std::max(instance.domain_size(), r_max + 1));
  artifacts.node_relation_bound = std::pow(per_value, static_cast<double>(widest));

  std::vector<Constraint> constraints;
  constraints.reserve(d.bags.size());
  for (std::size_t p = 0; p < d.bags.size(); ++p) {
    std::vector<VarId> ordinary;
    std::vector<std::size_t> scoped;  // constraints whose scope-variable sits in this bag
    for (std::size_t x : d.bags[p]) {
      if (x < n) {
        ordinary.push_back(static_cast<VarId>(x));
      } else {
        for (std::size_t c : constraints_of_edge[x - n]) scoped.push_back(c);
      }
    }
    std::sort(scoped.begin(), scoped.end());
    const double estimate = std::pow(static_cast<double>(instance.domain_size()), static_cast<double>(ordinary.size()));
    if (estimate > budget)
      throw BudgetExceeded("bag '" + d.tree.node_names[p] + "' needs |U|^" + std::to_string(ordinary.size()) + " = " +
                               std::to_string(estimate) + " tuples, budget is " + std::to_string(budget),
                           estimate, budget);
    if (ordinary.empty() && scoped.empty()) throw InputError("tree node '" + d.tree.node_names[p] + "' has an empty bag");

    // Per scoped constraint: positions of its variables inside `ordinary`, or npos when absent.
    std::vector<std::vector<std::size_t>> where(scoped.size());
    std::vector<bool> whole_scope(scoped.size(), true);
    for (std::size_t s = 0; s < scoped.size(); ++s)
      for (VarId x : instance.constraint(scoped[s]).scope) {
        auto it = std::find(ordinary.begin(), ordinary.end(), x);
        where[s].push_back(it == ordinary.end() ? std::string::npos : static_cast<std::size_t>(it - ordinary.begin()));
        if (it == ordinary.end()) whole_scope[s] = false;
      }

    Constraint out{d.tree.node_names[p], ordinary, {}, std::nullopt, std::nullopt};
    for (std::size_t c : scoped) out.scope.push_back(static_cast<VarId>(n + c));
    double produced = 0;
    for_each_row(ordinary.size(), instance.domain_size(), [&](const Row& theta) {
      std::vector<std::vector<ValueId>> options(scoped.size());
      for (std::size_t s = 0; s < scoped.size(); ++s) {
        const Constraint& c = instance.constraint(scoped[s]);
        for (std::size_t t = 0; t < c.tuples.size(); ++t) {
          bool agree = true;
          for (std::size_t j = 0; j < c.scope.size() && agree; ++j)
            agree = where[s][j] == std::string::npos || theta[where[s][j]] == c.tuples[t][j];
          if (agree) options[s].push_back(tuple_value[scoped[s]][t]);
        }
        // A bag seeing only part of the scope cannot rule out a violation elsewhere.
        if (options[s].empty() || !whole_scope[s]) options[s].push_back(unsat);
      }
      std::vector<std::size_t> pick(scoped.size(), 0);
      while (true) {
        Row row = theta;
        for (std::size_t s = 0; s < scoped.size(); ++s) row.push_back(options[s][pick[s]]);
        out.tuples.push_back(std::move(row));
        if (++produced > budget)
          throw BudgetExceeded("bag '" + d.tree.node_names[p] + "' exceeds the budget of " + std::to_string(budget) +
                                   " tuples",
                               produced, budget);
        std::size_t s = scoped.size();
        while (s > 0) {
          if (++pick[s - 1] < options[s - 1].size()) break;
          pick[--s] = 0;
        }
        if (s == 0) break;
      }
    });
    artifacts.largest_node_relation = std::max(artifacts.largest_node_relation, out.tuples.size());
    constraints.push_back(std::move(out));
  }

  MaxCspReduction r{CspInstance(std::move(variables), std::move(domain), std::move(constraints)), {}, {d.tree, {}},
                    std::move(artifacts)};
  for (std::size_t c = 0; c < q; ++c)
    r.weights.set(static_cast<VarId>(n + c), unsat, instance.constraint(c).violation_cost.value_or(Rational(1)));
  if (r.instance.num_constraints() > 0)
    r.join_tree.edge_of_node = constraint_edge_map(r.instance, build_hypergraph(r.instance));
  return r;
}

}  // namespace structcsp
