#pragma once

#include <string>
#include <string_view>

#include "structcsp/model.hpp"

namespace structcsp {

struct ParseOptions {
  /// Names starting with "__" are reserved for transformation output; by
  /// default they are rejected in user input.
  bool allow_reserved_names = false;
};

/// Parses the `.csp.json` format:
///   {"variables":[...], "domain":[...],
///    "constraints":[{"name":s, "scope":[...], "tuples":[[...],...],
///                    "tuple_weights":[rat,...]?, "violation_cost":rat?}],
///    "unary_weights":{"VAR=VAL": rat}?}
/// where rat is an integer or a "p/q" string.
Problem parse_instance(std::string_view text, const ParseOptions& options = {});

/// Canonical serialization: keys in format order, everything in declaration order.
std::string serialize_instance(const Problem& problem);
std::string serialize_instance(const CspInstance& instance);

/// Reads and parses a file; I/O failures raise InputError.
Problem load_instance(const std::string& path, const ParseOptions& options = {});

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

/// `{"X":"a",...}` in variable declaration order.
std::string assignment_json(const CspInstance& instance, const Assignment& theta);

bool is_reserved_name(std::string_view name);

}  // namespace structcsp
