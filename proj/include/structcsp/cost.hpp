#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "structcsp/rational.hpp"

namespace structcsp {

/// A cost value: an exact rational, or the sentinel -inf ordered below every rational.
/// Integers that fit in 64 bits are held inline; other values in an immutable Rational.
class Cost {
 public:
  Cost() = default;
  Cost(const Rational& value);  // NOLINT(google-explicit-constructor)
  Cost(long long value) : small_(value) {}  // NOLINT(google-explicit-constructor)

  static Cost negative_infinity() {
    Cost c;
    c.neg_inf_ = true;
    return c;
  }

  bool is_negative_infinity() const noexcept { return neg_inf_; }

  /// Throws std::logic_error on -inf.
  Rational value() const;

  std::string to_string() const;

  friend bool operator==(const Cost& a, const Cost& b);
  friend bool operator<(const Cost& a, const Cost& b);
  friend bool operator<=(const Cost& a, const Cost& b) { return !(b < a); }

  /// Exact sum; -inf absorbs.
  friend Cost operator+(const Cost& a, const Cost& b);
  /// Exact difference of two finite costs.
  friend Cost operator-(const Cost& a, const Cost& b);

 private:
  bool is_small() const noexcept { return !neg_inf_ && !big_; }

  long long small_ = 0;
  std::shared_ptr<const Rational> big_;
  bool neg_inf_ = false;
};

/// Totally ordered commutative monoid over Cost values. The built-ins are
/// (Q, +, 0, <=) and (Q, max, -inf, <=); custom structures may be supplied
/// as long as they obey the monoid and monotonicity laws.
class CostMonoid {
 public:
  using Combine = std::function<Cost(const Cost&, const Cost&)>;
  using Less = std::function<bool(const Cost&, const Cost&)>;

  CostMonoid(std::string name, Cost identity, Combine combine, Less less = {});

  static const CostMonoid& sum();
  static const CostMonoid& max();
  /// "sum" or "max"; throws InputError otherwise.
  static const CostMonoid& by_name(std::string_view name);

  const std::string& name() const noexcept { return name_; }
  const Cost& identity() const noexcept { return identity_; }
  Cost combine(const Cost& a, const Cost& b) const { return combine_(a, b); }
  bool less(const Cost& a, const Cost& b) const { return less_(a, b); }
  bool is_sum() const noexcept { return name_ == "sum"; }

 private:
  std::string name_;
  Cost identity_;
  Combine combine_;
  Less less_;
};

/// Checks commutativity, associativity, identity and monotonicity on every
/// triple drawn from `samples`. Returns a description of the first failure.
std::optional<std::string> find_monoid_law_violation(const CostMonoid& monoid,
                                                     std::span<const Cost> samples);

}  // namespace structcsp
