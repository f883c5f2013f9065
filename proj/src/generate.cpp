#include "structcsp/generate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "structcsp/errors.hpp"

namespace structcsp::generate {

namespace {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {  // inclusive
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; }

// Integers, halves and thirds in [-5, 5].
Rational random_weight(Rng& rng) {
  switch (uniform(rng, 0, 2)) {
    case 0:
      return Rational(static_cast<long long>(uniform(rng, 0, 10)) - 5);
    case 1:
      return Rational(static_cast<long long>(uniform(rng, 0, 20)) - 10) / 2;
    default:
      return Rational(static_cast<long long>(uniform(rng, 0, 30)) - 15) / 3;
  }
}

std::vector<std::string> value_names(std::size_t d) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < d; ++i) out.push_back(std::to_string(i));
  return out;
}

void check_params(const Params& p) {
  if (p.domain == 0) throw InputError("domain size must be positive");
  if (p.max_arity == 0) throw InputError("max arity must be positive");
  if (p.density < 0 || p.density > 1) throw InputError("density must lie in [0, 1]");
  if (p.plant_probability < 0 || p.plant_probability > 1) throw InputError("plant probability must lie in [0, 1]");
}

// Relation over `scope`: each of the |U|^arity tuples kept with probability
// `density`, plus the hidden solution's tuple when `plant` is set.
std::vector<Row> random_relation(Rng& rng, const std::vector<VarId>& scope, std::size_t domain, double density,
                                 const Assignment* hidden) {
  std::vector<Row> rows;
  Row row(scope.size(), 0);
  Row planted;
  if (hidden)
    for (VarId v : scope) planted.push_back((*hidden)[v]);
  while (true) {
    if ((hidden && row == planted) || coin(rng, density)) rows.push_back(row);
    std::size_t i = scope.size();
    while (i > 0) {
      if (++row[i - 1] < domain) break;
      row[--i] = 0;
    }
    if (i == 0) break;
  }
  std::shuffle(rows.begin(), rows.end(), rng);
  return rows;
}

// Fills in names, relations and weights for a list of scopes over `num_vars` variables.
Problem realize(Rng& rng, const std::vector<std::vector<VarId>>& scopes, std::size_t num_vars, const Params& p) {
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < num_vars; ++i) vars.push_back("X" + std::to_string(i + 1));
  Assignment hidden(num_vars);
  for (auto& x : hidden) x = static_cast<ValueId>(uniform(rng, 0, p.domain - 1));

  std::vector<Constraint> constraints;
  for (std::size_t c = 0; c < scopes.size(); ++c) {
    Constraint con{"C" + std::to_string(c + 1), scopes[c], {}, std::nullopt, std::nullopt};
    const bool plant = coin(rng, p.plant_probability);
    con.tuples = random_relation(rng, con.scope, p.domain, p.density, plant ? &hidden : nullptr);
    if (p.tuple_weights) {
      std::vector<Rational> w;
      for (std::size_t t = 0; t < con.tuples.size(); ++t) w.push_back(random_weight(rng));
      con.tuple_weights = std::move(w);
    }
    constraints.push_back(std::move(con));
  }
  Problem out{CspInstance(std::move(vars), value_names(p.domain), std::move(constraints)), {}};
  if (p.unary_weights)
    for (VarId v = 0; v < num_vars; ++v)
      for (ValueId u = 0; u < p.domain; ++u)
        if (coin(rng, 0.8)) out.unary_weights.set(v, u, random_weight(rng));
  return out;
}

// Random sample of k distinct elements of `from`, sorted.
std::vector<VarId> sample(Rng& rng, std::vector<VarId> from, std::size_t k) {
  std::shuffle(from.begin(), from.end(), rng);
  from.resize(std::min(k, from.size()));
  std::sort(from.begin(), from.end());
  return from;
}

// Adds an ear below a random existing scope: a subset of it plus fresh variables.
void add_ear(Rng& rng, std::vector<std::vector<VarId>>& scopes, std::size_t& used, std::size_t max_vars,
             std::size_t max_arity) {
  const auto& host = scopes[uniform(rng, 0, scopes.size() - 1)];
  const std::size_t arity = uniform(rng, 1, max_arity);
  const std::size_t fresh_room = max_vars - used;
  const std::size_t min_shared = arity > fresh_room ? arity - fresh_room : 0;
  const std::size_t shared = uniform(rng, std::min(min_shared, host.size()), std::min(arity, host.size()));
  std::vector<VarId> scope = sample(rng, host, shared);
  const std::size_t fresh = std::min(arity - shared, fresh_room);
  for (std::size_t i = 0; i < fresh; ++i) scope.push_back(static_cast<VarId>(used++));
  if (scope.empty()) scope.push_back(host.front());
  std::sort(scope.begin(), scope.end());
  scopes.push_back(std::move(scope));
}

}  // namespace

Problem chain(std::size_t length, std::size_t domain, std::uint64_t seed, std::size_t tuples_per_constraint,
              double density, bool tuple_weights) {
  if (length == 0) throw InputError("chain length must be positive");
  if (domain == 0) throw InputError("domain size must be positive");
  if (tuples_per_constraint > domain * domain)
    throw InputError("a binary relation over " + std::to_string(domain) + " values has at most " +
                     std::to_string(domain * domain) + " tuples");
  Rng rng(seed);
  const std::size_t n = length + 1;
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < n; ++i) vars.push_back("X" + std::to_string(i + 1));
  Assignment hidden(n);
  for (auto& x : hidden) x = static_cast<ValueId>(uniform(rng, 0, domain - 1));

  std::vector<Constraint> constraints;
  std::vector<Row> all;
  for (ValueId a = 0; a < domain; ++a)
    for (ValueId b = 0; b < domain; ++b) all.push_back({a, b});
  const std::size_t keep = tuples_per_constraint > 0
                               ? tuples_per_constraint
                               : std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(density * all.size())));
  for (std::size_t i = 0; i < length; ++i) {
    Constraint c{"C" + std::to_string(i + 1), {static_cast<VarId>(i), static_cast<VarId>(i + 1)}, {}, std::nullopt,
                 std::nullopt};
    const Row planted{hidden[i], hidden[i + 1]};
    std::vector<Row> pool;
    for (const Row& r : all)
      if (r != planted) pool.push_back(r);
    std::shuffle(pool.begin(), pool.end(), rng);
    c.tuples.push_back(planted);
    for (std::size_t k = 0; k + 1 < keep; ++k) c.tuples.push_back(pool[k]);
    std::sort(c.tuples.begin(), c.tuples.end());
    if (tuple_weights) {
      std::vector<Rational> w;
      for (std::size_t t = 0; t < c.tuples.size(); ++t) w.push_back(random_weight(rng));
      c.tuple_weights = std::move(w);
    }
    constraints.push_back(std::move(c));
  }
  Problem out{CspInstance(std::move(vars), value_names(domain), std::move(constraints)), {}};
  for (VarId v = 0; v < n; ++v)
    for (ValueId u = 0; u < domain; ++u) out.unary_weights.set(v, u, Rational(static_cast<long long>(uniform(rng, 0, 5))));
  return out;
}

Problem acyclic(const Params& params, std::uint64_t seed) {
  check_params(params);
  if (params.variables == 0 || params.constraints == 0) throw InputError("need at least one variable and constraint");
  Rng rng(seed);
  std::vector<std::vector<VarId>> scopes;
  std::size_t used = std::min(uniform(rng, 1, params.max_arity), params.variables);
  std::vector<VarId> first(used);
  std::iota(first.begin(), first.end(), VarId{0});
  scopes.push_back(first);
  while (scopes.size() < params.constraints) add_ear(rng, scopes, used, params.variables, params.max_arity);
  return realize(rng, scopes, used, params);
}

Problem triangle_core(const Params& params, std::uint64_t seed) {
  check_params(params);
  if (params.variables < 3 || params.constraints < 3 || params.max_arity < 2)
    throw InputError("a triangle core needs 3 variables, 3 constraints and arity 2");
  Rng rng(seed);
  std::vector<std::vector<VarId>> scopes{{0, 1}, {1, 2}, {0, 2}};
  std::size_t used = 3;
  while (scopes.size() < params.constraints) add_ear(rng, scopes, used, params.variables, params.max_arity);
  return realize(rng, scopes, used, params);
}

Problem random(const Params& params, std::uint64_t seed) {
  check_params(params);
  if (params.variables == 0 || params.constraints == 0) throw InputError("need at least one variable and constraint");
  Rng rng(seed);
  std::vector<VarId> all(params.variables);
  std::iota(all.begin(), all.end(), VarId{0});
  std::vector<std::vector<VarId>> scopes;
  for (std::size_t c = 0; c < params.constraints; ++c)
    scopes.push_back(sample(rng, all, uniform(rng, 1, std::min(params.max_arity, params.variables))));
  // Keep only constrained variables, renumbered densely.
  std::vector<VarId> rename(params.variables, params.variables);
  std::size_t used = 0;
  for (VarId v = 0; v < params.variables; ++v)
    for (const auto& s : scopes)
      if (std::binary_search(s.begin(), s.end(), v)) {
        rename[v] = static_cast<VarId>(used++);
        break;
      }
  for (auto& s : scopes)
    for (auto& v : s) v = rename[v];
  return realize(rng, scopes, used, params);
}

Hypergraph random_hypergraph(Rng& rng, std::size_t vertices, std::size_t edges, std::size_t max_arity) {
  std::vector<VarId> all(vertices);
  std::iota(all.begin(), all.end(), VarId{0});
  std::vector<std::vector<VarId>> scopes;
  for (std::size_t e = 0; e < edges; ++e)
    scopes.push_back(sample(rng, all, uniform(rng, 1, std::max<std::size_t>(1, std::min(max_arity, vertices)))));
  std::vector<std::size_t> rename(vertices, vertices);
  std::vector<std::string> names;
  for (VarId v = 0; v < vertices; ++v)
    for (const auto& s : scopes)
      if (std::binary_search(s.begin(), s.end(), v)) {
        rename[v] = names.size();
        names.push_back("V" + std::to_string(v + 1));
        break;
      }
  std::vector<Hyperedge> out;
  for (std::size_t e = 0; e < scopes.size(); ++e) {
    Hyperedge h{"e" + std::to_string(e + 1), {}};
    for (auto v : scopes[e]) h.vertices.push_back(rename[v]);
    out.push_back(std::move(h));
  }
  return Hypergraph(std::move(names), std::move(out));
}

Hypergraph random_acyclic_hypergraph(Rng& rng, std::size_t vertices, std::size_t edges, std::size_t max_arity) {
  if (vertices == 0 || edges == 0 || max_arity == 0) return Hypergraph();
  std::vector<std::vector<VarId>> scopes;
  std::size_t used = std::min(uniform(rng, 1, max_arity), vertices);
  std::vector<VarId> first(used);
  std::iota(first.begin(), first.end(), VarId{0});
  scopes.push_back(first);
  while (scopes.size() < edges) add_ear(rng, scopes, used, vertices, max_arity);
  std::vector<std::string> names;
  for (std::size_t v = 0; v < used; ++v) names.push_back("V" + std::to_string(v + 1));
  std::vector<Hyperedge> out;
  for (std::size_t e = 0; e < scopes.size(); ++e)
    out.push_back(Hyperedge{"e" + std::to_string(e + 1), std::vector<std::size_t>(scopes[e].begin(), scopes[e].end())});
  return Hypergraph(std::move(names), std::move(out));
}

Graph random_tree(Rng& rng, std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("t" + std::to_string(i + 1));
  Graph g(std::move(names));
  if (n < 2) return g;
  std::vector<std::size_t> seq(n - 2);
  for (auto& x : seq) x = uniform(rng, 0, n - 1);
  std::vector<std::size_t> degree(n, 1);
  for (auto x : seq) ++degree[x];
  for (auto x : seq) {
    std::size_t leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    g.add_edge(leaf, x);
    --degree[leaf];
    --degree[x];
  }
  std::size_t a = n, b = n;
  for (std::size_t v = 0; v < n; ++v)
    if (degree[v] == 1) (a == n ? a : b) = v;
  g.add_edge(a, b);
  return g;
}

Graph complete_graph(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i + 1));
  Graph g(std::move(names));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) g.add_edge(a, b);
  return g;
}

}  // namespace structcsp::generate
