#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "structcsp/decomposition.hpp"
#include "structcsp/generate.hpp"
#include "structcsp/hypergraph.hpp"
#include "structcsp/model.hpp"
#include "structcsp/rational.hpp"

namespace structcsp::test {

/// A constraint written with names.
struct NamedConstraint {
  std::string name;
  std::vector<std::string> scope;
  std::vector<std::vector<std::string>> tuples;
  std::optional<std::vector<Rational>> tuple_weights = std::nullopt;
};

inline CspInstance make_instance(std::vector<std::string> variables, std::vector<std::string> domain,
                                 const std::vector<NamedConstraint>& constraints) {
  std::map<std::string, VarId> var;
  for (VarId i = 0; i < variables.size(); ++i) var[variables[i]] = i;
  std::map<std::string, ValueId> val;
  for (ValueId i = 0; i < domain.size(); ++i) val[domain[i]] = i;
  std::vector<Constraint> cs;
  for (const NamedConstraint& nc : constraints) {
    Constraint c{nc.name, {}, {}, nc.tuple_weights, std::nullopt};
    for (const auto& x : nc.scope) c.scope.push_back(var.at(x));
    for (const auto& t : nc.tuples) {
      Row row;
      for (const auto& u : t) row.push_back(val.at(u));
      c.tuples.push_back(std::move(row));
    }
    cs.push_back(std::move(c));
  }
  return CspInstance(std::move(variables), std::move(domain), std::move(cs));
}

inline UnaryCostFunction make_weights(const CspInstance& p,
                                      const std::vector<std::tuple<std::string, std::string, Rational>>& entries) {
  UnaryCostFunction w;
  for (const auto& [x, u, r] : entries) w.set(*p.find_variable(x), *p.find_value(u), r);
  return w;
}

inline Assignment make_assignment(const CspInstance& p, const std::map<std::string, std::string>& named) {
  Assignment theta(p.num_variables(), 0);
  for (const auto& [x, u] : named) theta.at(*p.find_variable(x)) = *p.find_value(u);
  return theta;
}

inline std::map<std::string, std::string> named(const CspInstance& p, const Assignment& theta) {
  std::map<std::string, std::string> out;
  for (VarId v = 0; v < theta.size(); ++v) out[p.variable_name(v)] = p.value_name(theta[v]);
  return out;
}

/// Vertices in first-appearance order.
inline Hypergraph make_hypergraph(const std::vector<std::pair<std::string, std::vector<std::string>>>& edges) {
  std::vector<std::string> vertices;
  std::map<std::string, std::size_t> index;
  std::vector<Hyperedge> out;
  for (const auto& [id, members] : edges) {
    Hyperedge e{id, {}};
    for (const auto& v : members) {
      auto [it, fresh] = index.emplace(v, vertices.size());
      if (fresh) vertices.push_back(v);
      e.vertices.push_back(it->second);
    }
    out.push_back(std::move(e));
  }
  return Hypergraph(std::move(vertices), std::move(out));
}

inline Graph make_graph(const std::vector<std::string>& names,
                        const std::vector<std::pair<std::string, std::string>>& edges) {
  Graph g(names);
  for (const auto& [a, b] : edges) g.add_edge(*g.find_vertex(a), *g.find_vertex(b));
  return g;
}

inline std::vector<std::size_t> vertex_ids(const Graph& g, const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  for (const auto& n : names) out.push_back(*g.find_vertex(n));
  std::sort(out.begin(), out.end());
  return out;
}

/// P_chain: X,Y,Z over {0,1}; C1 on {X,Y} = {00,01,11}, C2 on {Y,Z} = {01,10}.
inline CspInstance p_chain() {
  return make_instance({"X", "Y", "Z"}, {"0", "1"},
                       {{"C1", {"X", "Y"}, {{"0", "0"}, {"0", "1"}, {"1", "1"}}},
                        {"C2", {"Y", "Z"}, {{"0", "1"}, {"1", "0"}}}});
}

/// w(X,0)=0, w(X,1)=5, w(Y,0)=1, w(Y,1)=0, w(Z,0)=2, w(Z,1)=0.
inline UnaryCostFunction p_chain_weights(const CspInstance& p) {
  return make_weights(p, {{"X", "0", 0}, {"X", "1", 5}, {"Y", "0", 1}, {"Y", "1", 0}, {"Z", "0", 2}, {"Z", "1", 0}});
}

/// Three equality constraints around a triangle over {0,1}.
inline CspInstance triangle_equality() {
  const std::vector<std::vector<std::string>> eq{{"0", "0"}, {"1", "1"}};
  return make_instance({"A", "B", "C"}, {"0", "1"},
                       {{"AB", {"A", "B"}, eq}, {"BC", {"B", "C"}, eq}, {"CA", {"C", "A"}, eq}});
}

/// A satisfiable core (X != Y, Y != Z) plus one empty constraint over every variable.
inline CspInstance theorem3_fixture() {
  const std::vector<std::vector<std::string>> neq{{"0", "1"}, {"1", "0"}};
  return make_instance({"X", "Y", "Z"}, {"0", "1"},
                       {{"C1", {"X", "Y"}, neq}, {"C2", {"Y", "Z"}, neq}, {"Big", {"X", "Y", "Z"}, {}}});
}

inline const std::string kFixtureDir = STRUCTCSP_FIXTURE_DIR;
inline std::string fixture(const std::string& name) { return kFixtureDir + "/" + name; }

/// Parameters matching the desk-scale property tests: <= 6 variables, |U| <= 4,
/// <= 5 constraints, arity <= 3; the sizes vary with the seed.
inline generate::Params small_params(std::uint64_t seed, std::size_t max_vars = 6, std::size_t max_domain = 4,
                                     std::size_t max_constraints = 5, std::size_t max_arity = 3) {
  generate::Params p;
  p.variables = 2 + seed % (max_vars - 1);
  p.domain = 2 + (seed / 7) % (max_domain - 1);
  p.constraints = 1 + (seed / 3) % max_constraints;
  p.max_arity = 2 + (seed / 11) % (max_arity - 1);
  p.density = 0.35 + 0.1 * static_cast<double>((seed / 5) % 5);
  p.plant_probability = 0.8;
  return p;
}

/// small_params raised to what a triangle core needs: >= 3 variables and >= 3 constraints.
inline generate::Params triangle_params(std::uint64_t seed) {
  generate::Params p = small_params(seed);
  p.variables = std::max<std::size_t>(p.variables, 3);
  p.constraints = 3 + seed % 3;
  return p;
}

}  // namespace structcsp::test
