#include "structcsp/cost.hpp"

#include <limits>
#include <stdexcept>

#include "structcsp/errors.hpp"

namespace structcsp {

Cost::Cost(const Rational& value) {
  if (is_integer(value)) {
    const BigInt& n = boost::multiprecision::numerator(value);
    if (n >= std::numeric_limits<long long>::min() && n <= std::numeric_limits<long long>::max()) {
      small_ = static_cast<long long>(n);
      return;
    }
  }
  big_ = std::make_shared<const Rational>(value);
}

Rational Cost::value() const {
  if (neg_inf_) throw std::logic_error("Cost::value() on -inf");
  return big_ ? *big_ : Rational(small_);
}

std::string Cost::to_string() const {
  if (neg_inf_) return "-inf";
  return big_ ? structcsp::to_string(*big_) : std::to_string(small_);
}

bool operator==(const Cost& a, const Cost& b) {
  if (a.neg_inf_ || b.neg_inf_) return a.neg_inf_ == b.neg_inf_;
  if (a.is_small() && b.is_small()) return a.small_ == b.small_;
  return a.value() == b.value();
}

bool operator<(const Cost& a, const Cost& b) {
  if (a.neg_inf_) return !b.neg_inf_;
  if (b.neg_inf_) return false;
  if (a.is_small() && b.is_small()) return a.small_ < b.small_;
  return a.value() < b.value();
}

Cost operator+(const Cost& a, const Cost& b) {
  if (a.neg_inf_ || b.neg_inf_) return Cost::negative_infinity();
  if (a.is_small() && b.is_small()) {
    long long r = 0;
    if (!__builtin_add_overflow(a.small_, b.small_, &r)) return Cost(r);
  }
  return Cost(a.value() + b.value());
}

Cost operator-(const Cost& a, const Cost& b) {
  if (a.neg_inf_ || b.neg_inf_) throw std::logic_error("Cost subtraction involving -inf");
  if (a.is_small() && b.is_small()) {
    long long r = 0;
    if (!__builtin_sub_overflow(a.small_, b.small_, &r)) return Cost(r);
  }
  return Cost(a.value() - b.value());
}

CostMonoid::CostMonoid(std::string name, Cost identity, Combine combine, Less less)
    : name_(std::move(name)), identity_(std::move(identity)), combine_(std::move(combine)),
      less_(less ? std::move(less) : Less([](const Cost& a, const Cost& b) { return a < b; })) {}

const CostMonoid& CostMonoid::sum() {
  static const CostMonoid monoid("sum", Cost(0), [](const Cost& a, const Cost& b) { return a + b; });
  return monoid;
}

const CostMonoid& CostMonoid::max() {
  static const CostMonoid monoid("max", Cost::negative_infinity(),
                                 [](const Cost& a, const Cost& b) { return a < b ? b : a; });
  return monoid;
}

const CostMonoid& CostMonoid::by_name(std::string_view name) {
  if (name == "sum") return sum();
  if (name == "max") return max();
  throw InputError("unknown cost monoid '" + std::string(name) + "' (expected sum or max)");
}

std::optional<std::string> find_monoid_law_violation(const CostMonoid& m, std::span<const Cost> samples) {
  const auto show = [](const Cost& c) { return c.to_string(); };
  for (const Cost& a : samples) {
    if (!(m.combine(a, m.identity()) == a)) return "identity fails for " + show(a);
    for (const Cost& b : samples) {
      if (!(m.combine(a, b) == m.combine(b, a)))
        return "commutativity fails for " + show(a) + ", " + show(b);
      for (const Cost& c : samples) {
        if (!(m.combine(m.combine(a, b), c) == m.combine(a, m.combine(b, c))))
          return "associativity fails for " + show(a) + ", " + show(b) + ", " + show(c);
        if (!m.less(b, a) && m.less(m.combine(b, c), m.combine(a, c)))
          return "monotonicity fails for " + show(a) + " <= " + show(b) + " with " + show(c);
      }
    }
  }
  return std::nullopt;
}

}  // namespace structcsp
