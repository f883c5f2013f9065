#include "structcsp/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "structcsp/errors.hpp"
#include "structcsp/hypergraph.hpp"
#include "structcsp/json_support.hpp"

namespace structcsp {

using json = nlohmann::ordered_json;

bool is_reserved_name(std::string_view name) { return name.rfind("__", 0) == 0; }

namespace {

std::vector<std::string> string_list(const json& doc, const char* key, bool required = true) {
  if (!doc.contains(key)) {
    if (required) throw SemanticError(std::string("missing field '") + key + "'", key);
    return {};
  }
  const json& arr = doc.at(key);
  if (!arr.is_array()) throw SemanticError(std::string("'") + key + "' must be an array", key);
  std::vector<std::string> out;
  for (const json& x : arr) {
    if (!x.is_string()) throw SemanticError(std::string("'") + key + "' must contain strings", key);
    out.push_back(x.get<std::string>());
  }
  return out;
}

void check_name(const std::string& name, const char* what, const ParseOptions& options) {
  if (!options.allow_reserved_names && is_reserved_name(name))
    throw SemanticError(std::string(what) + " '" + name + "' uses the reserved prefix \"__\"", name);
}

}  // namespace

Problem parse_instance(std::string_view text, const ParseOptions& options) {
  json doc = parse_json_document(text);
  if (!doc.is_object()) throw ParseError("instance must be a JSON object", 0);

  std::vector<std::string> variables = string_list(doc, "variables");
  std::vector<std::string> domain = string_list(doc, "domain");
  for (const auto& v : variables) {
    check_name(v, "variable", options);
    if (v.rfind(kIncidenceEdgePrefix, 0) == 0)
      throw SemanticError("variable '" + v + "' starts with the reserved prefix '@'", v);
    if (v.find('=') != std::string::npos) throw SemanticError("variable '" + v + "' contains '='", v);
  }
  for (const auto& u : domain) check_name(u, "value", options);

  std::unordered_map<std::string, VarId> var_index;
  for (VarId i = 0; i < variables.size(); ++i)
    if (!var_index.emplace(variables[i], i).second)
      throw SemanticError("duplicate variable '" + variables[i] + "'", variables[i]);
  std::unordered_map<std::string, ValueId> value_index;
  for (ValueId i = 0; i < domain.size(); ++i)
    if (!value_index.emplace(domain[i], i).second)
      throw SemanticError("duplicate value '" + domain[i] + "'", domain[i]);

  auto var_of = [&](const std::string& name, const std::string& where) {
    auto it = var_index.find(name);
    if (it == var_index.end()) throw SemanticError("undeclared variable '" + name + "' in " + where, name);
    return it->second;
  };
  auto value_of = [&](const std::string& name, const std::string& where) {
    auto it = value_index.find(name);
    if (it == value_index.end()) throw SemanticError("undeclared value '" + name + "' in " + where, name);
    return it->second;
  };

  std::vector<Constraint> constraints;
  if (!doc.contains("constraints") || !doc.at("constraints").is_array())
    throw SemanticError("missing array field 'constraints'", "constraints");
  for (const json& jc : doc.at("constraints")) {
    if (!jc.is_object()) throw SemanticError("constraint must be an object", "constraints");
    Constraint c;
    if (!jc.contains("name") || !jc.at("name").is_string())
      throw SemanticError("constraint without a string 'name'", "constraints");
    c.name = jc.at("name").get<std::string>();
    const std::string where = "constraint '" + c.name + "'";
    for (const auto& v : string_list(jc, "scope")) {
      const VarId id = var_of(v, where);
      for (VarId seen : c.scope)
        if (seen == id) throw SemanticError("variable '" + v + "' repeated in scope of " + where, v);
      c.scope.push_back(id);
    }
    if (!jc.contains("tuples") || !jc.at("tuples").is_array())
      throw SemanticError(where + " needs a 'tuples' array", c.name);
    for (const json& jt : jc.at("tuples")) {
      if (!jt.is_array() || jt.size() != c.scope.size())
        throw SemanticError(where + " has a tuple of the wrong arity", c.name);
      Row row;
      for (const json& x : jt) {
        if (!x.is_string()) throw SemanticError(where + " tuples must contain value names", c.name);
        row.push_back(value_of(x.get<std::string>(), where));
      }
      c.tuples.push_back(std::move(row));
    }
    if (jc.contains("tuple_weights")) {
      const json& jw = jc.at("tuple_weights");
      if (!jw.is_array()) throw SemanticError(where + " 'tuple_weights' must be an array", c.name);
      if (jw.size() != c.tuples.size())
        throw SemanticError(where + " has " + std::to_string(jw.size()) + " weights for " +
                                std::to_string(c.tuples.size()) + " tuples",
                            c.name);
      std::vector<Rational> weights;
      for (const json& x : jw) weights.push_back(rational_from_json(x, where));
      c.tuple_weights = std::move(weights);
    }
    if (jc.contains("violation_cost")) c.violation_cost = rational_from_json(jc.at("violation_cost"), where);
    constraints.push_back(std::move(c));
  }

  Problem problem{CspInstance(std::move(variables), std::move(domain), std::move(constraints)), {}};

  if (doc.contains("unary_weights")) {
    const json& jw = doc.at("unary_weights");
    if (!jw.is_object()) throw SemanticError("'unary_weights' must be an object", "unary_weights");
    for (const auto& [key, value] : jw.items()) {
      const auto eq = key.find('=');
      if (eq == std::string::npos)
        throw SemanticError("unary weight key '" + key + "' is not of the form VAR=VAL", key);
      const VarId v = var_of(key.substr(0, eq), "unary_weights");
      const ValueId u = value_of(key.substr(eq + 1), "unary_weights");
      problem.unary_weights.set(v, u, rational_from_json(value, "unary weight '" + key + "'"));
    }
  }
  return problem;
}

std::string serialize_instance(const Problem& problem) {
  const CspInstance& p = problem.instance;
  json doc;
  doc["variables"] = p.variables();
  doc["domain"] = p.domain();
  json constraints = json::array();
  for (const Constraint& c : p.constraints()) {
    json jc;
    jc["name"] = c.name;
    json scope = json::array();
    for (VarId v : c.scope) scope.push_back(p.variable_name(v));
    jc["scope"] = std::move(scope);
    json tuples = json::array();
    for (const Row& t : c.tuples) {
      json row = json::array();
      for (ValueId u : t) row.push_back(p.value_name(u));
      tuples.push_back(std::move(row));
    }
    jc["tuples"] = std::move(tuples);
    if (c.tuple_weights) {
      json weights = json::array();
      for (const Rational& w : *c.tuple_weights) weights.push_back(rational_to_json(w));
      jc["tuple_weights"] = std::move(weights);
    }
    if (c.violation_cost) jc["violation_cost"] = rational_to_json(*c.violation_cost);
    constraints.push_back(std::move(jc));
  }
  doc["constraints"] = std::move(constraints);
  if (!problem.unary_weights.empty()) {
    json weights = json::object();
    for (const auto& [b, w] : problem.unary_weights.entries())
      weights[p.variable_name(b.var) + "=" + p.value_name(b.value)] = rational_to_json(w);
    doc["unary_weights"] = std::move(weights);
  }
  return doc.dump(2) + "\n";
}

std::string serialize_instance(const CspInstance& instance) { return serialize_instance(Problem{instance, {}}); }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

Problem load_instance(const std::string& path, const ParseOptions& options) {
  return parse_instance(read_text_file(path), options);
}

std::string assignment_json(const CspInstance& instance, const Assignment& theta) {
  json doc = json::object();
  for (VarId v = 0; v < theta.size(); ++v) doc[instance.variable_name(v)] = instance.value_name(theta[v]);
  return doc.dump();
}

}  // namespace structcsp
