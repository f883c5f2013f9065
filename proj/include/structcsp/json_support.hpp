#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "structcsp/rational.hpp"

namespace structcsp {

/// Parses text into an order-preserving JSON value; malformed text raises ParseError.
nlohmann::ordered_json parse_json_document(std::string_view text);

/// An integer or a "p/q" string; `where` names the field for error messages.
Rational rational_from_json(const nlohmann::ordered_json& value, const std::string& where);

/// An integer when it fits in 64 bits and has denominator 1, else a "p/q" string.
nlohmann::ordered_json rational_to_json(const Rational& value);

}  // namespace structcsp
