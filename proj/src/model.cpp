#include "structcsp/model.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "structcsp/errors.hpp"
#include "structcsp/relation.hpp"

namespace structcsp {
namespace {

std::vector<std::uint32_t> name_ranks(const std::vector<std::string>& names) {
  std::vector<std::uint32_t> order(names.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return names[a] < names[b]; });
  std::vector<std::uint32_t> rank(names.size());
  for (std::uint32_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
  return rank;
}

}  // namespace

CspInstance::CspInstance(std::vector<std::string> variables, std::vector<std::string> domain,
                         std::vector<Constraint> constraints)
    : variables_(std::move(variables)), domain_(std::move(domain)), constraints_(std::move(constraints)) {
  for (VarId v = 0; v < variables_.size(); ++v) {
    if (variables_[v].empty()) throw SemanticError("empty variable name", "");
    if (!var_index_.emplace(variables_[v], v).second)
      throw SemanticError("duplicate variable '" + variables_[v] + "'", variables_[v]);
  }
  for (ValueId u = 0; u < domain_.size(); ++u) {
    if (domain_[u].empty()) throw SemanticError("empty value name", "");
    if (!value_index_.emplace(domain_[u], u).second)
      throw SemanticError("duplicate value '" + domain_[u] + "'", domain_[u]);
  }

  std::unordered_set<std::string> names;
  for (const Constraint& c : constraints_) {
    if (!names.insert(c.name).second)
      throw SemanticError("duplicate constraint name '" + c.name + "'", c.name);
    if (c.scope.empty()) throw SemanticError("constraint '" + c.name + "' has an empty scope", c.name);
    std::vector<VarId> seen;
    for (VarId v : c.scope) {
      if (v >= variables_.size())
        throw SemanticError("constraint '" + c.name + "' references an undeclared variable", c.name);
      if (std::find(seen.begin(), seen.end(), v) != seen.end())
        throw SemanticError("variable '" + variables_[v] + "' repeated in scope of '" + c.name + "'",
                            variables_[v]);
      seen.push_back(v);
    }
    RowSet rows;
    for (const Row& t : c.tuples) {
      if (t.size() != c.scope.size())
        throw SemanticError("tuple of wrong arity in constraint '" + c.name + "'", c.name);
      for (ValueId u : t)
        if (u >= domain_.size())
          throw SemanticError("constraint '" + c.name + "' uses an undeclared value", c.name);
      if (!rows.insert(t).second)
        throw SemanticError("duplicate tuple in constraint '" + c.name + "'", c.name);
    }
    if (c.tuple_weights && c.tuple_weights->size() != c.tuples.size())
      throw SemanticError("constraint '" + c.name + "' needs exactly one weight per tuple", c.name);
  }

  var_rank_ = name_ranks(variables_);
  value_rank_ = name_ranks(domain_);
}

std::optional<VarId> CspInstance::find_variable(std::string_view name) const {
  auto it = var_index_.find(std::string(name));
  if (it == var_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<ValueId> CspInstance::find_value(std::string_view name) const {
  auto it = value_index_.find(std::string(name));
  if (it == value_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t CspInstance::largest_relation() const noexcept {
  std::size_t r = 0;
  for (const Constraint& c : constraints_) r = std::max(r, c.tuples.size());
  return r;
}

void UnaryCostFunction::set(VarId var, ValueId value, Rational weight) {
  weights_[key(var, value)] = std::move(weight);
}

const Rational& UnaryCostFunction::get(VarId var, ValueId value) const {
  static const Rational zero{0};
  auto it = weights_.find(key(var, value));
  return it == weights_.end() ? zero : it->second;
}

bool UnaryCostFunction::contains(VarId var, ValueId value) const {
  return weights_.count(key(var, value)) != 0;
}

std::vector<std::pair<Binding, Rational>> UnaryCostFunction::entries() const {
  std::vector<std::pair<Binding, Rational>> out;
  out.reserve(weights_.size());
  for (const auto& [k, w] : weights_)
    out.push_back({Binding{static_cast<VarId>(k >> 32), static_cast<ValueId>(k & 0xffffffffu)}, w});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::pair(a.first.var, a.first.value) < std::pair(b.first.var, b.first.value);
  });
  return out;
}

InstanceStats instance_stats(const CspInstance& instance) {
  InstanceStats s;
  s.num_variables = instance.num_variables();
  s.num_constraints = instance.num_constraints();
  s.largest_relation = instance.largest_relation();
  return s;
}

Cost unary_cost(const UnaryCostFunction& w, const Substitution& theta, const CostMonoid& monoid) {
  Cost acc = monoid.identity();
  for (const Binding& b : theta) acc = monoid.combine(acc, Cost(w.get(b.var, b.value)));
  return acc;
}

Cost unary_cost(const UnaryCostFunction& w, const Assignment& theta, const CostMonoid& monoid) {
  Cost acc = monoid.identity();
  for (VarId v = 0; v < theta.size(); ++v) acc = monoid.combine(acc, Cost(w.get(v, theta[v])));
  return acc;
}

std::optional<std::size_t> matching_tuple(const Constraint& c, const Assignment& theta) {
  for (std::size_t i = 0; i < c.tuples.size(); ++i) {
    const Row& t = c.tuples[i];
    bool match = true;
    for (std::size_t j = 0; j < c.scope.size() && match; ++j) match = theta[c.scope[j]] == t[j];
    if (match) return i;
  }
  return std::nullopt;
}

EvaluationReport evaluate_assignment(const CspInstance& instance, const Assignment& theta,
                                     const UnaryCostFunction* w) {
  if (theta.size() != instance.num_variables())
    throw InputError("assignment binds " + std::to_string(theta.size()) + " of " +
                     std::to_string(instance.num_variables()) + " variables");
  for (ValueId u : theta)
    if (u >= instance.domain_size()) throw InputError("assignment uses an undeclared value");

  EvaluationReport report;
  bool all_weighted = true;
  Rational tuple_cost{0};
  for (const Constraint& c : instance.constraints()) {
    auto hit = matching_tuple(c, theta);
    if (!hit) {
      ++report.violation_degree;
      report.violation_cost += c.violation_cost.value_or(Rational(1));
    } else if (c.tuple_weights) {
      tuple_cost += (*c.tuple_weights)[*hit];
    }
    all_weighted = all_weighted && c.tuple_weights.has_value();
  }
  report.satisfies = report.violation_degree == 0;
  if (report.satisfies && all_weighted) report.tuple_cost = tuple_cost;
  if (w)
    for (VarId v = 0; v < theta.size(); ++v) report.unary_cost += w->get(v, theta[v]);
  return report;
}

EvaluationReport evaluate_assignment(const CspInstance& instance, const Substitution& theta,
                                     const UnaryCostFunction* w) {
  Assignment total(instance.num_variables(), 0);
  std::vector<bool> bound(instance.num_variables(), false);
  for (const Binding& b : theta) {
    if (b.var >= instance.num_variables()) throw InputError("substitution binds an undeclared variable");
    if (bound[b.var])
      throw InputError("variable '" + instance.variable_name(b.var) + "' bound twice");
    bound[b.var] = true;
    total[b.var] = b.value;
  }
  for (VarId v = 0; v < bound.size(); ++v)
    if (!bound[v]) throw InputError("partial assignment: '" + instance.variable_name(v) + "' unbound");
  return evaluate_assignment(instance, total, w);
}

bool canonical_less(const CspInstance& instance, const Substitution& a, const Substitution& b) {
  auto keyed = [&](const Substitution& s) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> k;
    k.reserve(s.size());
    for (const Binding& x : s) k.emplace_back(instance.variable_rank(x.var), instance.value_rank(x.value));
    std::sort(k.begin(), k.end());
    return k;
  };
  return keyed(a) < keyed(b);
}

bool canonical_less(const CspInstance& instance, const Assignment& a, const Assignment& b) {
  // Walk variables in name order; sizes are equal for total assignments.
  const std::size_t n = std::min(a.size(), b.size());
  std::vector<VarId> order(n);
  std::iota(order.begin(), order.end(), VarId{0});
  std::sort(order.begin(), order.end(),
            [&](VarId x, VarId y) { return instance.variable_rank(x) < instance.variable_rank(y); });
  for (VarId v : order) {
    if (a[v] == b[v]) continue;
    return instance.value_rank(a[v]) < instance.value_rank(b[v]);
  }
  return a.size() < b.size();
}

Substitution to_substitution(const Assignment& theta) {
  Substitution s;
  s.reserve(theta.size());
  for (VarId v = 0; v < theta.size(); ++v) s.push_back({v, theta[v]});
  return s;
}

Substitution to_substitution(std::span<const VarId> scope, const Row& row) {
  Substitution s;
  s.reserve(scope.size());
  for (std::size_t i = 0; i < scope.size(); ++i) s.push_back({scope[i], row[i]});
  return s;
}

}  // namespace structcsp
