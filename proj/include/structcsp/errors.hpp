#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace structcsp {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: malformed files, invalid witnesses, inputs outside a documented precondition.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Malformed text. `position` is a byte offset into the input.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what + " (at byte " + std::to_string(position) + ")"), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Well-formed text describing an invalid object; `entity` names the offender.
class SemanticError : public InputError {
 public:
  SemanticError(const std::string& what, std::string entity)
      : InputError(what), entity_(std::move(entity)) {}
  const std::string& entity() const noexcept { return entity_; }

 private:
  std::string entity_;
};

/// An exhaustive routine was asked to handle more than its hard size limit.
class TooLarge : public InputError {
 public:
  using InputError::InputError;
};

/// A transformation would materialize more tuples than the configured budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, double estimate, double budget)
      : Error(what), estimate_(estimate), budget_(budget) {}
  double estimate() const noexcept { return estimate_; }
  double budget() const noexcept { return budget_; }

 private:
  double estimate_;
  double budget_;
};

}  // namespace structcsp
