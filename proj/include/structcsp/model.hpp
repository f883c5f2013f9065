#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "structcsp/cost.hpp"
#include "structcsp/rational.hpp"

namespace structcsp {

using VarId = std::uint32_t;
using ValueId = std::uint32_t;

/// One X/u pair.
struct Binding {
  VarId var;
  ValueId value;
  friend bool operator==(const Binding&, const Binding&) = default;
};

/// A substitution: each variable bound at most once. Order of bindings is not significant.
using Substitution = std::vector<Binding>;

/// A total assignment, indexed by VarId.
using Assignment = std::vector<ValueId>;

/// Values of one tuple, aligned with the owning constraint's scope order.
using Row = std::vector<ValueId>;

struct Constraint {
  std::string name;
  std::vector<VarId> scope;
  std::vector<Row> tuples;
  /// When present, one weight per tuple (tuple_weights[i] weights tuples[i]).
  std::optional<std::vector<Rational>> tuple_weights;
  /// Cost charged for violating this constraint in Max-CSP mode (default 1).
  std::optional<Rational> violation_cost;
};

/// The triple <Var, U, C>. Immutable once constructed; the constructor
/// enforces every structural invariant and throws SemanticError naming the
/// offending entity.
class CspInstance {
 public:
  CspInstance() = default;
  CspInstance(std::vector<std::string> variables, std::vector<std::string> domain,
              std::vector<Constraint> constraints);

  std::size_t num_variables() const noexcept { return variables_.size(); }
  std::size_t domain_size() const noexcept { return domain_.size(); }
  std::size_t num_constraints() const noexcept { return constraints_.size(); }

  const std::vector<std::string>& variables() const noexcept { return variables_; }
  const std::vector<std::string>& domain() const noexcept { return domain_; }
  const std::vector<Constraint>& constraints() const noexcept { return constraints_; }
  const Constraint& constraint(std::size_t i) const { return constraints_.at(i); }

  const std::string& variable_name(VarId v) const { return variables_.at(v); }
  const std::string& value_name(ValueId u) const { return domain_.at(u); }
  std::optional<VarId> find_variable(std::string_view name) const;
  std::optional<ValueId> find_value(std::string_view name) const;

  /// Position of the variable/value in lexicographic name order.
  std::uint32_t variable_rank(VarId v) const { return var_rank_[v]; }
  std::uint32_t value_rank(ValueId u) const { return value_rank_[u]; }

  /// Largest relation size (r_max).
  std::size_t largest_relation() const noexcept;

 private:
  std::vector<std::string> variables_;
  std::vector<std::string> domain_;
  std::vector<Constraint> constraints_;
  std::unordered_map<std::string, VarId> var_index_;
  std::unordered_map<std::string, ValueId> value_index_;
  std::vector<std::uint32_t> var_rank_;
  std::vector<std::uint32_t> value_rank_;
};

/// w : Var x U -> Q, sparse. Absent entries read as 0.
class UnaryCostFunction {
 public:
  void set(VarId var, ValueId value, Rational weight);
  const Rational& get(VarId var, ValueId value) const;
  bool contains(VarId var, ValueId value) const;
  bool empty() const noexcept { return weights_.empty(); }
  std::size_t size() const noexcept { return weights_.size(); }
  /// Explicit entries sorted by (var, value).
  std::vector<std::pair<Binding, Rational>> entries() const;

 private:
  static std::uint64_t key(VarId var, ValueId value) {
    return (static_cast<std::uint64_t>(var) << 32) | value;
  }
  std::unordered_map<std::uint64_t, Rational> weights_;
};

/// An instance together with the unary weights carried by its file.
struct Problem {
  CspInstance instance;
  UnaryCostFunction unary_weights;
};

struct EvaluationReport {
  bool satisfies = false;
  std::size_t violation_degree = 0;
  Rational unary_cost{0};
  /// Set when every constraint carries tuple weights and the assignment satisfies them all.
  std::optional<Rational> tuple_cost;
  /// Sum of violation costs of the unsatisfied constraints (each defaults to 1).
  Rational violation_cost{0};
};

struct InstanceStats {
  std::size_t num_variables = 0;
  std::size_t num_constraints = 0;
  std::size_t largest_relation = 0;
  std::optional<std::size_t> decomposition_width;
  std::optional<std::size_t> decomposition_vertices;
};

InstanceStats instance_stats(const CspInstance& instance);

/// Combines w(X,u) over every binding with `monoid`; the empty substitution yields the identity.
Cost unary_cost(const UnaryCostFunction& w, const Substitution& theta, const CostMonoid& monoid);
Cost unary_cost(const UnaryCostFunction& w, const Assignment& theta, const CostMonoid& monoid);

/// Throws InputError unless `theta` binds every variable exactly once.
EvaluationReport evaluate_assignment(const CspInstance& instance, const Substitution& theta,
                                     const UnaryCostFunction* w = nullptr);
EvaluationReport evaluate_assignment(const CspInstance& instance, const Assignment& theta,
                                     const UnaryCostFunction* w = nullptr);

/// Index of the tuple of constraint `c` contained in `theta`, if any.
std::optional<std::size_t> matching_tuple(const Constraint& c, const Assignment& theta);

/// Canonical strict total order on substitutions: bindings sorted by variable
/// name, compared lexicographically by (variable name, value name).
bool canonical_less(const CspInstance& instance, const Substitution& a, const Substitution& b);
/// Same order restricted to total assignments.
bool canonical_less(const CspInstance& instance, const Assignment& a, const Assignment& b);

Substitution to_substitution(const Assignment& theta);
/// The bindings of tuple `row` of a constraint with the given scope.
Substitution to_substitution(std::span<const VarId> scope, const Row& row);

}  // namespace structcsp
