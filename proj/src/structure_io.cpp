#include "structcsp/structure_io.hpp"

#include <algorithm>
#include <unordered_map>

#include "structcsp/errors.hpp"
#include "structcsp/json_support.hpp"

namespace structcsp {

using json = nlohmann::ordered_json;

namespace {

const json& field(const json& doc, const char* key, bool (json::*is)() const noexcept, const char* kind) {
  if (!doc.is_object() || !doc.contains(key) || !(doc.at(key).*is)())
    throw SemanticError(std::string("missing ") + kind + " field '" + key + "'", key);
  return doc.at(key);
}

std::string string_of(const json& x, const std::string& where) {
  if (!x.is_string()) throw SemanticError("expected a string in " + where, where);
  return x.get<std::string>();
}

std::size_t size_of(const json& x, const std::string& where) {
  if (!x.is_number_unsigned()) throw SemanticError("expected a natural number in " + where, where);
  return x.get<std::size_t>();
}

// Reads "tree_edges" and "root" against the node names of "nodes".
Tree parse_tree(const json& doc, std::vector<std::string> names) {
  Tree t;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (!index.emplace(names[i], i).second) throw SemanticError("duplicate tree node '" + names[i] + "'", names[i]);
  auto node = [&](const json& x) {
    const std::string name = string_of(x, "tree_edges");
    auto it = index.find(name);
    if (it == index.end()) throw SemanticError("unknown tree node '" + name + "'", name);
    return it->second;
  };
  t.node_names = std::move(names);
  for (const json& e : field(doc, "tree_edges", &json::is_array, "array")) {
    if (!e.is_array() || e.size() != 2) throw SemanticError("tree edge must be a pair of node names", "tree_edges");
    t.edges.emplace_back(node(e[0]), node(e[1]));
  }
  if (doc.contains("root")) {
    t.root = node(doc.at("root"));
  } else if (!t.node_names.empty()) {
    throw SemanticError("missing field 'root'", "root");
  }
  if (auto defect = t.structural_defect(); !defect.empty()) throw SemanticError("not a tree: " + defect, "tree_edges");
  return t;
}

json tree_json(const Tree& t, json nodes) {
  json doc;
  doc["nodes"] = std::move(nodes);
  json edges = json::array();
  for (auto [a, b] : t.edges) edges.push_back(json::array({t.node_names[a], t.node_names[b]}));
  doc["tree_edges"] = std::move(edges);
  if (t.size() > 0) doc["root"] = t.node_names[t.root];
  return doc;
}

}  // namespace

Hypergraph parse_hypergraph(std::string_view text) {
  const json doc = parse_json_document(text);
  std::vector<std::string> vertices;
  std::unordered_map<std::string, std::size_t> index;
  for (const json& v : field(doc, "vertices", &json::is_array, "array")) {
    std::string name = string_of(v, "vertices");
    if (!index.emplace(name, vertices.size()).second) throw SemanticError("duplicate vertex '" + name + "'", name);
    vertices.push_back(std::move(name));
  }
  std::vector<Hyperedge> edges;
  for (const auto& [id, members] : field(doc, "edges", &json::is_object, "object").items()) {
    if (!members.is_array()) throw SemanticError("edge '" + id + "' must list vertices", id);
    Hyperedge e{id, {}};
    for (const json& v : members) {
      const std::string name = string_of(v, "edge '" + id + "'");
      auto it = index.find(name);
      if (it == index.end()) throw SemanticError("edge '" + id + "' names unknown vertex '" + name + "'", name);
      e.vertices.push_back(it->second);
    }
    edges.push_back(std::move(e));
  }
  return Hypergraph(std::move(vertices), std::move(edges));
}

std::string serialize_hypergraph(const Hypergraph& h) {
  json doc;
  doc["vertices"] = h.vertices();
  json edges = json::object();
  for (const Hyperedge& e : h.edges()) {
    json members = json::array();
    for (auto v : e.vertices) members.push_back(h.vertices()[v]);
    edges[e.id] = std::move(members);
  }
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

JoinTree parse_join_tree(std::string_view text, const Hypergraph& h) {
  const json doc = parse_json_document(text);
  std::vector<std::string> names;
  JoinTree t;
  for (const auto& [name, id] : field(doc, "nodes", &json::is_object, "object").items()) {
    const std::string edge = string_of(id, "node '" + name + "'");
    auto e = h.find_edge(edge);
    if (!e) throw SemanticError("node '" + name + "' names unknown hyperedge '" + edge + "'", edge);
    names.push_back(name);
    t.edge_of_node.push_back(*e);
  }
  t.tree = parse_tree(doc, std::move(names));
  return t;
}

std::string serialize_join_tree(const JoinTree& t, const Hypergraph& h) {
  json nodes = json::object();
  for (std::size_t p = 0; p < t.tree.size(); ++p) nodes[t.tree.node_names[p]] = h.edge(t.edge_of_node[p]).id;
  return tree_json(t.tree, std::move(nodes)).dump(2) + "\n";
}

GeneralizedHypertreeDecomposition parse_decomposition(std::string_view text, const Graph& g, const Hypergraph* h) {
  const json doc = parse_json_document(text);
  GeneralizedHypertreeDecomposition d;
  std::vector<std::string> names;
  bool any_lambda = false;
  std::vector<std::vector<std::size_t>> lambda;
  for (const auto& [name, body] : field(doc, "nodes", &json::is_object, "object").items()) {
    const std::string where = "node '" + name + "'";
    std::vector<std::size_t> chi;
    for (const json& v : field(body, "chi", &json::is_array, "array")) {
      const std::string vertex = string_of(v, where);
      auto x = g.find_vertex(vertex);
      if (!x) throw SemanticError(where + " names unknown vertex '" + vertex + "'", vertex);
      chi.push_back(*x);
    }
    std::sort(chi.begin(), chi.end());
    chi.erase(std::unique(chi.begin(), chi.end()), chi.end());
    std::vector<std::size_t> cover;
    if (body.contains("lambda")) {
      any_lambda = true;
      if (h == nullptr) throw SemanticError(where + " has a lambda label but no hypergraph is available", name);
      if (!body.at("lambda").is_array()) throw SemanticError(where + " lambda must be an array", name);
      for (const json& e : body.at("lambda")) {
        const std::string id = string_of(e, where);
        auto idx = h->find_edge(id);
        if (!idx) throw SemanticError(where + " names unknown hyperedge '" + id + "'", id);
        cover.push_back(*idx);
      }
      std::sort(cover.begin(), cover.end());
      cover.erase(std::unique(cover.begin(), cover.end()), cover.end());
    }
    names.push_back(name);
    d.base.bags.push_back(std::move(chi));
    lambda.push_back(std::move(cover));
  }
  d.base.tree = parse_tree(doc, std::move(names));
  if (any_lambda) d.lambda = std::move(lambda);
  return d;
}

std::string serialize_decomposition(const TreeDecomposition& d, const Graph& g) {
  json nodes = json::object();
  for (std::size_t p = 0; p < d.tree.size(); ++p) {
    json chi = json::array();
    for (auto x : d.bags[p]) chi.push_back(g.vertex_name(x));
    nodes[d.tree.node_names[p]] = json{{"chi", std::move(chi)}};
  }
  return tree_json(d.tree, std::move(nodes)).dump(2) + "\n";
}

std::string serialize_decomposition(const GeneralizedHypertreeDecomposition& d, const Graph& g, const Hypergraph& h) {
  json nodes = json::object();
  for (std::size_t p = 0; p < d.base.tree.size(); ++p) {
    json chi = json::array();
    for (auto x : d.base.bags[p]) chi.push_back(g.vertex_name(x));
    json lambda = json::array();
    for (auto e : d.lambda[p]) lambda.push_back(h.edge(e).id);
    json body;
    body["chi"] = std::move(chi);
    body["lambda"] = std::move(lambda);
    nodes[d.base.tree.node_names[p]] = std::move(body);
  }
  return tree_json(d.base.tree, std::move(nodes)).dump(2) + "\n";
}

std::string serialize_artifacts(const ReductionArtifacts& a) {
  json doc;
  doc["kind"] = a.kind;
  doc["original_variables"] = a.original_variables;
  json vars = json::array();
  for (const FreshVariable& v : a.fresh_variables) vars.push_back(json{{"name", v.name}, {"constraint", v.constraint}});
  doc["fresh_variables"] = std::move(vars);
  json values = json::array();
  for (const FreshValue& v : a.fresh_values)
    values.push_back(json{{"name", v.name}, {"constraint", v.constraint}, {"tuple", v.tuple}});
  doc["fresh_values"] = std::move(values);
  if (a.sentinel) doc["sentinel"] = *a.sentinel;
  doc["constraint_nodes"] = a.constraint_nodes;
  doc["largest_node_relation"] = a.largest_node_relation;
  doc["node_relation_bound"] = a.node_relation_bound;
  return doc.dump(2) + "\n";
}

ReductionArtifacts parse_artifacts(std::string_view text) {
  const json doc = parse_json_document(text);
  ReductionArtifacts a;
  a.kind = string_of(field(doc, "kind", &json::is_string, "string"), "kind");
  for (const json& v : field(doc, "original_variables", &json::is_array, "array"))
    a.original_variables.push_back(string_of(v, "original_variables"));
  if (doc.contains("fresh_variables"))
    for (const json& v : doc.at("fresh_variables"))
      a.fresh_variables.push_back({string_of(field(v, "name", &json::is_string, "string"), "fresh_variables"),
                                   size_of(field(v, "constraint", &json::is_number, "number"), "fresh_variables")});
  if (doc.contains("fresh_values"))
    for (const json& v : doc.at("fresh_values"))
      a.fresh_values.push_back({string_of(field(v, "name", &json::is_string, "string"), "fresh_values"),
                                size_of(field(v, "constraint", &json::is_number, "number"), "fresh_values"),
                                size_of(field(v, "tuple", &json::is_number, "number"), "fresh_values")});
  if (doc.contains("sentinel")) a.sentinel = string_of(doc.at("sentinel"), "sentinel");
  if (doc.contains("constraint_nodes"))
    for (const json& nodes : doc.at("constraint_nodes")) {
      std::vector<std::size_t> list;
      for (const json& p : nodes) list.push_back(size_of(p, "constraint_nodes"));
      a.constraint_nodes.push_back(std::move(list));
    }
  if (doc.contains("largest_node_relation")) a.largest_node_relation = size_of(doc.at("largest_node_relation"), "largest_node_relation");
  if (doc.contains("node_relation_bound")) {
    if (!doc.at("node_relation_bound").is_number()) throw SemanticError("node_relation_bound must be a number", "node_relation_bound");
    a.node_relation_bound = doc.at("node_relation_bound").get<double>();
  }
  return a;
}

}  // namespace structcsp
