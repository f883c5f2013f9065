#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "structcsp/model.hpp"

namespace structcsp {

struct Hyperedge {
  std::string id;
  /// Sorted, duplicate-free vertex indices.
  std::vector<std::size_t> vertices;
};

/// H = (V, E). Vertices are referenced by index; hyperedges by index or id.
class Hypergraph {
 public:
  Hypergraph() = default;
  /// Throws SemanticError on empty hyperedges, unknown vertices, or duplicate ids.
  Hypergraph(std::vector<std::string> vertices, std::vector<Hyperedge> edges);

  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  const std::vector<Hyperedge>& edges() const noexcept { return edges_; }
  std::size_t num_vertices() const noexcept { return vertices_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const Hyperedge& edge(std::size_t i) const { return edges_.at(i); }
  std::optional<std::size_t> find_edge(std::string_view id) const;
  std::optional<std::size_t> find_vertex(std::string_view name) const;
  /// Rank of edge i's id in lexicographic id order.
  std::size_t edge_rank(std::size_t i) const { return edge_rank_[i]; }

  friend bool operator==(const Hypergraph& a, const Hypergraph& b);

 private:
  std::vector<std::string> vertices_;
  std::vector<Hyperedge> edges_;
  std::vector<std::size_t> edge_rank_;
};

bool operator==(const Hyperedge& a, const Hyperedge& b);

/// Simple undirected graph without self-loops.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::vector<std::string> vertex_names);

  std::size_t num_vertices() const noexcept { return names_.size(); }
  std::size_t num_edges() const noexcept { return num_edges_; }
  const std::vector<std::string>& vertex_names() const noexcept { return names_; }
  const std::string& vertex_name(std::size_t v) const { return names_.at(v); }
  std::optional<std::size_t> find_vertex(std::string_view name) const;

  /// Throws InputError on a self-loop or out-of-range vertex; duplicate edges are ignored.
  void add_edge(std::size_t a, std::size_t b);
  bool has_edge(std::size_t a, std::size_t b) const;
  /// Sorted neighbour list.
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_.at(v); }
  /// Edges as (smaller, larger) pairs in sorted order.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.names_ == b.names_ && a.adjacency_ == b.adjacency_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::size_t num_edges_ = 0;
};

/// An undirected tree with a designated root. Node names are used for I/O only.
struct Tree {
  std::vector<std::string> node_names;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t root = 0;

  std::size_t size() const noexcept { return node_names.size(); }

  /// Empty string when the structure is a tree (n-1 edges, connected, valid root);
  /// otherwise a description of the defect.
  std::string structural_defect() const;

  static std::vector<std::string> default_names(std::size_t n);
};

/// Parent/children view of a Tree rooted at its root.
struct RootedTree {
  static constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

  explicit RootedTree(const Tree& tree);

  std::vector<std::size_t> parent;
  /// Children of each node in increasing node order.
  std::vector<std::vector<std::size_t>> children;
  std::vector<std::size_t> preorder;
  /// Reverse preorder: every child precedes its parent.
  std::vector<std::size_t> postorder;
};

/// Join tree: one tree node per hyperedge occurrence.
struct JoinTree {
  Tree tree;
  /// Hyperedge index carried by each tree node.
  std::vector<std::size_t> edge_of_node;
};

struct NotAcyclic {
  /// The irreducible residual of the GYO reduction: no ears, no vertex in a single edge.
  Hypergraph residual;
};

using AcyclicityResult = std::variant<JoinTree, NotAcyclic>;

/// Result of a validator: `valid` plus the first violation found.
struct JoinTreeCheck {
  bool valid = false;
  std::string message;
  /// Vertex whose occurrences are disconnected, when that is the failure.
  std::optional<std::size_t> vertex;
  /// Two tree nodes containing `vertex` whose connecting path leaves it.
  std::optional<std::pair<std::size_t, std::size_t>> endpoints;
  explicit operator bool() const noexcept { return valid; }
};

/// One hyperedge per distinct scope, in first-occurrence order, id = name of the
/// first constraint with that scope. Throws SemanticError on an unconstrained variable.
Hypergraph build_hypergraph(const CspInstance& instance);

/// Hyperedge index of each constraint of `instance` inside `build_hypergraph(instance)`.
std::vector<std::size_t> constraint_edge_map(const CspInstance& instance, const Hypergraph& h);

/// Edge {a,b} iff some hyperedge contains both.
Graph primal_graph(const Hypergraph& h);

/// Prefix that namespaces hyperedge nodes in the incidence graph.
inline constexpr std::string_view kIncidenceEdgePrefix = "@";

/// Bipartite graph: vertices 0..|V|-1 are the hypergraph vertices (same
/// names), vertices |V|..|V|+|E|-1 the hyperedges (named "@<id>").
Graph incidence_graph(const Hypergraph& h);

/// GYO reduction that repeatedly removes the lexicographically smallest ear.
/// The ear's witness (smallest-id edge containing its shared vertices)
/// becomes its parent; the last remaining edge is the root.
AcyclicityResult gyo_acyclicity(const Hypergraph& h);

bool is_acyclic(const Hypergraph& h);

JoinTreeCheck check_join_tree(const Hypergraph& h, const JoinTree& t);

}  // namespace structcsp
