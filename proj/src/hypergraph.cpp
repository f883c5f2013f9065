#include "structcsp/hypergraph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "structcsp/errors.hpp"

namespace structcsp {

// ---------------------------------------------------------------------------
// Hypergraph

Hypergraph::Hypergraph(std::vector<std::string> vertices, std::vector<Hyperedge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  std::unordered_set<std::string> names;
  for (const auto& v : vertices_)
    if (!names.insert(v).second) throw SemanticError("duplicate vertex '" + v + "'", v);
  std::unordered_set<std::string> ids;
  for (Hyperedge& e : edges_) {
    if (!ids.insert(e.id).second) throw SemanticError("duplicate hyperedge id '" + e.id + "'", e.id);
    if (e.vertices.empty()) throw SemanticError("hyperedge '" + e.id + "' is empty", e.id);
    std::sort(e.vertices.begin(), e.vertices.end());
    e.vertices.erase(std::unique(e.vertices.begin(), e.vertices.end()), e.vertices.end());
    if (e.vertices.back() >= vertices_.size())
      throw SemanticError("hyperedge '" + e.id + "' references an unknown vertex", e.id);
  }
  std::vector<std::size_t> order(edges_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return edges_[a].id < edges_[b].id; });
  edge_rank_.resize(edges_.size());
  for (std::size_t r = 0; r < order.size(); ++r) edge_rank_[order[r]] = r;
}

std::optional<std::size_t> Hypergraph::find_edge(std::string_view id) const {
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].id == id) return i;
  return std::nullopt;
}

std::optional<std::size_t> Hypergraph::find_vertex(std::string_view name) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i] == name) return i;
  return std::nullopt;
}

bool operator==(const Hyperedge& a, const Hyperedge& b) { return a.id == b.id && a.vertices == b.vertices; }

bool operator==(const Hypergraph& a, const Hypergraph& b) {
  return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
}

// ---------------------------------------------------------------------------
// Graph

Graph::Graph(std::vector<std::string> vertex_names)
    : names_(std::move(vertex_names)), adjacency_(names_.size()) {}

std::optional<std::size_t> Graph::find_vertex(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

void Graph::add_edge(std::size_t a, std::size_t b) {
  if (a >= names_.size() || b >= names_.size()) throw InputError("graph edge references an unknown vertex");
  if (a == b) throw InputError("self-loop on '" + names_[a] + "'");
  auto& na = adjacency_[a];
  auto it = std::lower_bound(na.begin(), na.end(), b);
  if (it != na.end() && *it == b) return;
  na.insert(it, b);
  auto& nb = adjacency_[b];
  nb.insert(std::lower_bound(nb.begin(), nb.end(), a), a);
  ++num_edges_;
}

bool Graph::has_edge(std::size_t a, std::size_t b) const {
  const auto& na = adjacency_.at(a);
  return std::binary_search(na.begin(), na.end(), b);
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(num_edges_);
  for (std::size_t a = 0; a < adjacency_.size(); ++a)
    for (std::size_t b : adjacency_[a])
      if (a < b) out.emplace_back(a, b);
  return out;
}

// ---------------------------------------------------------------------------
// Trees

std::vector<std::string> Tree::default_names(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) names.push_back("n" + std::to_string(i + 1));
  return names;
}

std::string Tree::structural_defect() const {
  const std::size_t n = size();
  if (n == 0) return edges.empty() ? "" : "edges in an empty tree";
  if (root >= n) return "root out of range";
  if (edges.size() != n - 1)
    return "tree with " + std::to_string(n) + " nodes has " + std::to_string(edges.size()) + " edges";
  std::vector<std::size_t> uf(n);
  std::iota(uf.begin(), uf.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) return "tree edge references an unknown node";
    if (a == b) return "self-loop at node '" + node_names[a] + "'";
    const auto ra = find(a), rb = find(b);
    if (ra == rb) return "cycle through node '" + node_names[a] + "'";
    uf[ra] = rb;
  }
  return "";
}

RootedTree::RootedTree(const Tree& tree)
    : parent(tree.size(), kNoParent), children(tree.size()) {
  const std::size_t n = tree.size();
  if (n == 0) return;
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [a, b] : tree.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{tree.root};
  seen[tree.root] = true;
  preorder.reserve(n);
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    preorder.push_back(v);
    for (std::size_t c : adj[v]) {
      if (seen[c]) continue;
      seen[c] = true;
      parent[c] = v;
      children[v].push_back(c);
    }
    for (auto it = children[v].rbegin(); it != children[v].rend(); ++it) stack.push_back(*it);
  }
  postorder.assign(preorder.rbegin(), preorder.rend());
}

// ---------------------------------------------------------------------------
// Encodings

namespace {

struct ScopeHash {
  std::size_t operator()(const std::vector<std::size_t>& scope) const noexcept {
    std::size_t h = scope.size();
    for (std::size_t v : scope) h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

using ScopeIndex = std::unordered_map<std::vector<std::size_t>, std::size_t, ScopeHash>;

}  // namespace

Hypergraph build_hypergraph(const CspInstance& instance) {
  std::vector<bool> used(instance.num_variables(), false);
  ScopeIndex seen;
  seen.reserve(instance.num_constraints());
  std::vector<Hyperedge> edges;
  for (const Constraint& c : instance.constraints()) {
    std::vector<std::size_t> scope(c.scope.begin(), c.scope.end());
    std::sort(scope.begin(), scope.end());
    for (auto v : scope) used[v] = true;
    if (seen.emplace(scope, edges.size()).second) edges.push_back(Hyperedge{c.name, std::move(scope)});
  }
  for (VarId v = 0; v < used.size(); ++v)
    if (!used[v])
      throw SemanticError("variable '" + instance.variable_name(v) + "' occurs in no constraint scope",
                          instance.variable_name(v));
  return Hypergraph(instance.variables(), std::move(edges));
}

std::vector<std::size_t> constraint_edge_map(const CspInstance& instance, const Hypergraph& h) {
  ScopeIndex index;
  index.reserve(h.num_edges());
  for (std::size_t e = 0; e < h.num_edges(); ++e) index.emplace(h.edge(e).vertices, e);
  std::vector<std::size_t> out;
  out.reserve(instance.num_constraints());
  for (const Constraint& c : instance.constraints()) {
    std::vector<std::size_t> scope(c.scope.begin(), c.scope.end());
    std::sort(scope.begin(), scope.end());
    auto it = index.find(scope);
    if (it == index.end()) throw InputError("constraint '" + c.name + "' has no hyperedge");
    out.push_back(it->second);
  }
  return out;
}

Graph primal_graph(const Hypergraph& h) {
  Graph g(h.vertices());
  for (const Hyperedge& e : h.edges())
    for (std::size_t i = 0; i < e.vertices.size(); ++i)
      for (std::size_t j = i + 1; j < e.vertices.size(); ++j) g.add_edge(e.vertices[i], e.vertices[j]);
  return g;
}

Graph incidence_graph(const Hypergraph& h) {
  std::vector<std::string> names = h.vertices();
  for (const Hyperedge& e : h.edges()) {
    std::string name = std::string(kIncidenceEdgePrefix) + e.id;
    if (std::find(h.vertices().begin(), h.vertices().end(), name) != h.vertices().end())
      throw SemanticError("incidence node '" + name + "' clashes with a vertex name", name);
    names.push_back(std::move(name));
  }
  Graph g(std::move(names));
  const std::size_t offset = h.num_vertices();
  for (std::size_t e = 0; e < h.num_edges(); ++e)
    for (std::size_t v : h.edge(e).vertices) g.add_edge(offset + e, v);
  return g;
}

// ---------------------------------------------------------------------------
// GYO

namespace {

class GyoReduction {
 public:
  explicit GyoReduction(const Hypergraph& h)
      : h_(h), alive_(h.num_edges(), true), count_(h.num_vertices(), 0), incident_(h.num_vertices()),
        parent_(h.num_edges(), RootedTree::kNoParent) {
    for (std::size_t e = 0; e < h.num_edges(); ++e) {
      alive_set_.emplace(h.edge_rank(e), e);
      for (std::size_t x : h.edge(e).vertices) {
        ++count_[x];
        incident_[x].push_back(e);
      }
    }
  }

  AcyclicityResult run() {
    const std::size_t m = h_.num_edges();
    if (m == 0) return JoinTree{};
    for (std::size_t e = 0; e < m; ++e)
      if (witness(e)) ears_.emplace(h_.edge_rank(e), e);

    while (alive_set_.size() > 1 && !ears_.empty()) {
      const std::size_t e = ears_.begin()->second;
      ears_.erase(ears_.begin());
      auto w = witness(e);
      if (!w) continue;
      parent_[e] = *w;
      alive_[e] = false;
      alive_set_.erase({h_.edge_rank(e), e});
      for (std::size_t x : h_.edge(e).vertices) --count_[x];
      for (std::size_t x : h_.edge(e).vertices)
        for (std::size_t g : incident_[x])
          if (alive_[g] && !ears_.count({h_.edge_rank(g), g}) && witness(g)) ears_.emplace(h_.edge_rank(g), g);
    }

    if (alive_set_.size() > 1) return NotAcyclic{residual()};

    JoinTree t;
    t.tree.node_names = Tree::default_names(m);
    t.tree.root = alive_set_.begin()->second;
    t.edge_of_node.resize(m);
    std::iota(t.edge_of_node.begin(), t.edge_of_node.end(), std::size_t{0});
    for (std::size_t e = 0; e < m; ++e)
      if (parent_[e] != RootedTree::kNoParent) t.tree.edges.emplace_back(parent_[e], e);
    return t;
  }

 private:
  // Alive edge f != e containing every vertex of e shared with another alive
  // edge, smallest id first.
  std::optional<std::size_t> witness(std::size_t e) const {
    if (!alive_[e] || alive_set_.size() < 2) return std::nullopt;
    std::vector<std::size_t> shared;
    for (std::size_t x : h_.edge(e).vertices)
      if (count_[x] >= 2) shared.push_back(x);
    if (shared.empty()) {
      for (auto [rank, f] : alive_set_)
        if (f != e) return f;
      return std::nullopt;
    }
    std::optional<std::size_t> best;
    for (std::size_t f : incident_[shared.front()]) {
      if (f == e || !alive_[f]) continue;
      const auto& fv = h_.edge(f).vertices;
      if (!std::includes(fv.begin(), fv.end(), shared.begin(), shared.end())) continue;
      if (!best || h_.edge_rank(f) < h_.edge_rank(*best)) best = f;
    }
    return best;
  }

  Hypergraph residual() const {
    std::vector<std::size_t> remap(h_.num_vertices(), RootedTree::kNoParent);
    std::vector<std::string> names;
    for (std::size_t x = 0; x < h_.num_vertices(); ++x)
      if (count_[x] >= 2) {
        remap[x] = names.size();
        names.push_back(h_.vertices()[x]);
      }
    std::vector<Hyperedge> edges;
    for (std::size_t e = 0; e < h_.num_edges(); ++e) {
      if (!alive_[e]) continue;
      Hyperedge r{h_.edge(e).id, {}};
      for (std::size_t x : h_.edge(e).vertices)
        if (remap[x] != RootedTree::kNoParent) r.vertices.push_back(remap[x]);
      edges.push_back(std::move(r));
    }
    return Hypergraph(std::move(names), std::move(edges));
  }

  const Hypergraph& h_;
  std::vector<bool> alive_;
  std::vector<std::size_t> count_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<std::size_t> parent_;
  std::set<std::pair<std::size_t, std::size_t>> alive_set_;
  std::set<std::pair<std::size_t, std::size_t>> ears_;
};

}  // namespace

AcyclicityResult gyo_acyclicity(const Hypergraph& h) { return GyoReduction(h).run(); }

bool is_acyclic(const Hypergraph& h) { return std::holds_alternative<JoinTree>(gyo_acyclicity(h)); }

JoinTreeCheck check_join_tree(const Hypergraph& h, const JoinTree& t) {
  JoinTreeCheck result;
  if (auto defect = t.tree.structural_defect(); !defect.empty()) {
    result.message = "not a tree: " + defect;
    return result;
  }
  const std::size_t n = t.tree.size();
  if (t.edge_of_node.size() != n) {
    result.message = "hyperedge labelling does not match the tree size";
    return result;
  }
  std::vector<bool> covered(h.num_edges(), false);
  for (std::size_t e : t.edge_of_node) {
    if (e >= h.num_edges()) {
      result.message = "tree node references an unknown hyperedge";
      return result;
    }
    covered[e] = true;
  }
  for (std::size_t e = 0; e < h.num_edges(); ++e)
    if (!covered[e]) {
      result.message = "hyperedge '" + h.edge(e).id + "' is not in the tree";
      return result;
    }

  std::vector<std::size_t> nodes_with(h.num_vertices(), 0), edges_with(h.num_vertices(), 0);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t x : h.edge(t.edge_of_node[p]).vertices) ++nodes_with[x];
  for (auto [a, b] : t.tree.edges) {
    const auto& va = h.edge(t.edge_of_node[a]).vertices;
    const auto& vb = h.edge(t.edge_of_node[b]).vertices;
    std::vector<std::size_t> common;
    std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(common));
    for (std::size_t x : common) ++edges_with[x];
  }
  for (std::size_t x = 0; x < h.num_vertices(); ++x) {
    if (nodes_with[x] == 0 || edges_with[x] == nodes_with[x] - 1) continue;
    // Locate two occurrences in different components of the induced forest.
    auto contains = [&](std::size_t p) {
      const auto& vs = h.edge(t.edge_of_node[p]).vertices;
      return std::binary_search(vs.begin(), vs.end(), x);
    };
    std::vector<std::vector<std::size_t>> adj(n);
    for (auto [a, b] : t.tree.edges)
      if (contains(a) && contains(b)) {
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
    std::size_t start = 0;
    while (!contains(start)) ++start;
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto w : adj[v])
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
    std::size_t other = 0;
    while (!(contains(other) && !seen[other])) ++other;
    result.vertex = x;
    result.endpoints = std::pair(start, other);
    result.message = "vertex '" + h.vertices()[x] + "' occurs in '" + t.tree.node_names[start] + "' and '" +
                     t.tree.node_names[other] + "' but not on the path between them";
    return result;
  }
  result.valid = true;
  return result;
}

}  // namespace structcsp
