#include "structcsp/json_support.hpp"

#include <limits>

#include "structcsp/errors.hpp"

namespace structcsp {

nlohmann::ordered_json parse_json_document(std::string_view text) {
  try {
    return nlohmann::ordered_json::parse(text.begin(), text.end());
  } catch (const nlohmann::ordered_json::parse_error& e) {
    throw ParseError(std::string("syntax error: ") + e.what(), e.byte);
  }
}

Rational rational_from_json(const nlohmann::ordered_json& value, const std::string& where) {
  if (value.is_number_integer()) {
    if (value.is_number_unsigned()) return Rational(BigInt(value.get<std::uint64_t>()));
    return Rational(BigInt(value.get<std::int64_t>()));
  }
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const InputError& e) {
      throw SemanticError(std::string(e.what()) + " in " + where, where);
    }
  }
  throw SemanticError("expected an integer or a \"p/q\" string in " + where, where);
}

nlohmann::ordered_json rational_to_json(const Rational& value) {
  if (is_integer(value)) {
    const BigInt n = boost::multiprecision::numerator(value);
    if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max())
      return n.convert_to<std::int64_t>();
  }
  return to_string(value);
}

}  // namespace structcsp
