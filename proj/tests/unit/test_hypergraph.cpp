#include <gtest/gtest.h>

#include "structcsp/errors.hpp"
#include "structcsp/hypergraph.hpp"
#include "structcsp/oracle.hpp"
#include "support.hpp"

namespace structcsp {
namespace {

using test::make_hypergraph;

std::vector<std::string> edge_names(const Graph& g) {
  std::vector<std::string> out;
  for (auto [a, b] : g.edges()) {
    std::string x = g.vertex_name(a), y = g.vertex_name(b);
    if (y < x) std::swap(x, y);
    out.push_back(x + "-" + y);
  }
  std::sort(out.begin(), out.end());
  return out;
}

JoinTree make_join_tree(std::vector<std::size_t> edge_of_node, std::vector<std::pair<std::size_t, std::size_t>> edges,
                        std::size_t root) {
  JoinTree t;
  t.tree.node_names = Tree::default_names(edge_of_node.size());
  t.tree.edges = std::move(edges);
  t.tree.root = root;
  t.edge_of_node = std::move(edge_of_node);
  return t;
}

TEST(BuildHypergraph, PChain) {
  const Hypergraph h = build_hypergraph(test::p_chain());
  ASSERT_EQ(h.num_edges(), 2u);
  EXPECT_EQ(h.edge(0).id, "C1");
  EXPECT_EQ(h.edge(0).vertices, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(h.edge(1).vertices, (std::vector<std::size_t>{1, 2}));
}

TEST(BuildHypergraph, IdenticalScopesShareOneHyperedge) {
  const CspInstance p = test::make_instance({"X", "Y"}, {"0"},
                                            {{"C1", {"X", "Y"}, {{"0", "0"}}}, {"C2", {"Y", "X"}, {{"0", "0"}}}});
  const Hypergraph h = build_hypergraph(p);
  EXPECT_EQ(h.num_edges(), 1u);
  EXPECT_EQ(constraint_edge_map(p, h), (std::vector<std::size_t>{0, 0}));
}

TEST(BuildHypergraph, UnconstrainedVariableIsReported) {
  const CspInstance p = test::make_instance({"X", "Y"}, {"0"}, {{"C1", {"X"}, {{"0"}}}});
  try {
    build_hypergraph(p);
    FAIL() << "expected an error";
  } catch (const SemanticError& e) {
    EXPECT_EQ(e.entity(), "Y");
  }
}

TEST(Hypergraph, RejectsMalformedEdges) {
  EXPECT_THROW(Hypergraph({"A"}, {Hyperedge{"e", {}}}), SemanticError);
  EXPECT_THROW(Hypergraph({"A"}, {Hyperedge{"e", {3}}}), SemanticError);
  EXPECT_THROW(Hypergraph({"A"}, {Hyperedge{"e", {0}}, Hyperedge{"e", {0}}}), SemanticError);
}

TEST(PrimalGraph, SingleHyperedgeIsATriangle) {
  const Graph g = primal_graph(make_hypergraph({{"h", {"A", "B", "C"}}}));
  EXPECT_EQ(edge_names(g), (std::vector<std::string>{"A-B", "A-C", "B-C"}));
}

TEST(PrimalGraph, ChainIsAPath) {
  const Graph g = primal_graph(make_hypergraph({{"h1", {"X", "Y"}}, {"h2", {"Y", "Z"}}}));
  EXPECT_EQ(edge_names(g), (std::vector<std::string>{"X-Y", "Y-Z"}));
}

TEST(PrimalGraph, SevenVertexHyperedgeFlattensToTwentyOneEdges) {
  const Hypergraph h = make_hypergraph({{"h1", {"A", "B", "C"}}, {"h2", {"A", "C", "D", "E", "F", "G", "H"}}});
  const Graph g = primal_graph(h);
  std::size_t inside = 0;
  const std::vector<std::string> big{"A", "C", "D", "E", "F", "G", "H"};
  for (std::size_t i = 0; i < big.size(); ++i)
    for (std::size_t j = i + 1; j < big.size(); ++j)
      inside += g.has_edge(*g.find_vertex(big[i]), *g.find_vertex(big[j]));
  EXPECT_EQ(inside, 21u);
  EXPECT_EQ(primal_graph(make_hypergraph({{"h2", big}})).num_edges(), 21u);
}

TEST(IncidenceGraph, SingleEdgeIsAStar) {
  const Graph g = incidence_graph(make_hypergraph({{"h", {"A", "B"}}}));
  EXPECT_EQ(edge_names(g), (std::vector<std::string>{"@h-A", "@h-B"}));
}

TEST(IncidenceGraph, ChainIsAPath) {
  const Graph g = incidence_graph(make_hypergraph({{"h1", {"X", "Y"}}, {"h2", {"Y", "Z"}}}));
  EXPECT_EQ(g.num_vertices(), 5u);
  EXPECT_EQ(edge_names(g), (std::vector<std::string>{"@h1-X", "@h1-Y", "@h2-Y", "@h2-Z"}));
}

TEST(IncidenceGraph, IsBipartiteOnRandomHypergraphs) {
  generate::Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const Hypergraph h = generate::random_hypergraph(rng, 6, 4, 3);
    const Graph g = incidence_graph(h);
    const std::size_t n = h.num_vertices();
    for (auto [a, b] : g.edges()) ASSERT_NE(a < n, b < n) << "edge inside one side";
  }
}

TEST(IncidenceGraph, NameClashIsReported) {
  const Hypergraph h({"@e", "A"}, {Hyperedge{"e", {0, 1}}});
  EXPECT_THROW(incidence_graph(h), InputError);
}

TEST(Encodings, AreDeterministic) {
  generate::Rng a(9), b(9);
  for (int i = 0; i < 20; ++i) {
    const Hypergraph h1 = generate::random_hypergraph(a, 5, 4, 3);
    const Hypergraph h2 = generate::random_hypergraph(b, 5, 4, 3);
    ASSERT_EQ(h1, h2);
    EXPECT_EQ(primal_graph(h1), primal_graph(h2));
    EXPECT_EQ(incidence_graph(h1), incidence_graph(h2));
  }
}

TEST(Gyo, SingleHyperedge) {
  const auto r = gyo_acyclicity(make_hypergraph({{"h", {"A", "B"}}}));
  ASSERT_TRUE(std::holds_alternative<JoinTree>(r));
  EXPECT_EQ(std::get<JoinTree>(r).tree.size(), 1u);
}

TEST(Gyo, TriangleIsNotAcyclic) {
  const Hypergraph h = make_hypergraph({{"AB", {"A", "B"}}, {"BC", {"B", "C"}}, {"CA", {"C", "A"}}});
  const auto r = gyo_acyclicity(h);
  ASSERT_TRUE(std::holds_alternative<NotAcyclic>(r));
  EXPECT_EQ(std::get<NotAcyclic>(r).residual.num_edges(), 3u);
  EXPECT_FALSE(oracle::exhaustive_join_tree_search(h));
}

TEST(Gyo, ResidualHasNoEarsAndNoPrivateVertices) {
  // A triangle core with a pendant edge: the pendant disappears, the core remains.
  const Hypergraph h =
      make_hypergraph({{"AB", {"A", "B"}}, {"BC", {"B", "C"}}, {"CA", {"C", "A"}}, {"CD", {"C", "D"}}});
  const auto r = gyo_acyclicity(h);
  ASSERT_TRUE(std::holds_alternative<NotAcyclic>(r));
  const Hypergraph& core = std::get<NotAcyclic>(r).residual;
  EXPECT_EQ(core.num_edges(), 3u);
  EXPECT_FALSE(core.find_edge("CD"));
  for (std::size_t v = 0; v < core.num_vertices(); ++v) {
    std::size_t occurrences = 0;
    for (const Hyperedge& e : core.edges()) occurrences += std::count(e.vertices.begin(), e.vertices.end(), v);
    EXPECT_NE(occurrences, 1u) << core.vertices()[v];
  }
}

TEST(Gyo, SubsetEdgesBecomeLeaves) {
  const Hypergraph h = make_hypergraph({{"a", {"A", "B", "C"}}, {"b", {"A", "B"}}, {"c", {"B"}}});
  const auto r = gyo_acyclicity(h);
  ASSERT_TRUE(std::holds_alternative<JoinTree>(r));
  EXPECT_TRUE(check_join_tree(h, std::get<JoinTree>(r)));
}

TEST(Gyo, IsDeterministic) {
  const Hypergraph h = make_hypergraph({{"e1", {"A", "B"}}, {"e2", {"B", "C"}}, {"e3", {"B", "D"}}, {"e4", {"D", "E"}}});
  const auto a = std::get<JoinTree>(gyo_acyclicity(h));
  const auto b = std::get<JoinTree>(gyo_acyclicity(h));
  EXPECT_EQ(a.tree.edges, b.tree.edges);
  EXPECT_EQ(a.tree.root, b.tree.root);
  EXPECT_EQ(a.edge_of_node, b.edge_of_node);
}

TEST(CheckJoinTree, ChainTreeIsValid) {
  const Hypergraph h = make_hypergraph({{"h1", {"X", "Y"}}, {"h2", {"Y", "Z"}}});
  EXPECT_TRUE(check_join_tree(h, make_join_tree({0, 1}, {{0, 1}}, 0)));
}

TEST(CheckJoinTree, StarMissingAInTheCenterNamesA) {
  const Hypergraph h = make_hypergraph({{"AB", {"A", "B"}}, {"BC", {"B", "C"}}, {"ACD", {"A", "C", "D"}}});
  const auto check = check_join_tree(h, make_join_tree({0, 1, 2}, {{1, 0}, {1, 2}}, 1));
  EXPECT_FALSE(check);
  ASSERT_TRUE(check.vertex);
  EXPECT_EQ(h.vertices()[*check.vertex], "A");
  ASSERT_TRUE(check.endpoints);
  const auto [p, q] = *check.endpoints;
  EXPECT_EQ(std::min(p, q), 0u);
  EXPECT_EQ(std::max(p, q), 2u);
}

TEST(CheckJoinTree, RejectsStructuralDefects) {
  const Hypergraph h = make_hypergraph({{"h1", {"X", "Y"}}, {"h2", {"Y", "Z"}}});
  EXPECT_FALSE(check_join_tree(h, make_join_tree({0}, {}, 0)));                // h2 not spanned
  EXPECT_FALSE(check_join_tree(h, make_join_tree({0, 1}, {}, 0)));             // disconnected
  EXPECT_FALSE(check_join_tree(h, make_join_tree({0, 7}, {{0, 1}}, 0)));       // unknown edge
  EXPECT_FALSE(check_join_tree(h, make_join_tree({0, 1}, {{0, 1}, {1, 0}}, 0)));  // too many edges
}

TEST(Gyo, TreesValidateOnRandomAcyclicHypergraphs) {
  generate::Rng rng(21);
  for (int i = 0; i < 500; ++i) {
    const Hypergraph h = generate::random_acyclic_hypergraph(rng, 8, 1 + i % 7, 4);
    const auto r = gyo_acyclicity(h);
    ASSERT_TRUE(std::holds_alternative<JoinTree>(r)) << "iteration " << i;
    ASSERT_TRUE(check_join_tree(h, std::get<JoinTree>(r)));
  }
}

}  // namespace
}  // namespace structcsp
