#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "structcsp/decomposition.hpp"
#include "structcsp/errors.hpp"
#include "structcsp/generate.hpp"
#include "support.hpp"

namespace structcsp {
namespace {

using test::make_graph;
using test::make_hypergraph;
using test::vertex_ids;

Graph path_xyz() { return make_graph({"X", "Y", "Z"}, {{"X", "Y"}, {"Y", "Z"}}); }

Graph cycle(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("c" + std::to_string(i));
  Graph g(names);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

TreeDecomposition two_bag(const Graph& g, std::vector<std::string> a, std::vector<std::string> b) {
  TreeDecomposition d;
  d.tree.node_names = {"p", "q"};
  d.tree.edges = {{0, 1}};
  d.bags = {vertex_ids(g, a), vertex_ids(g, b)};
  return d;
}

TreeDecomposition one_bag(const Graph& g) {
  TreeDecomposition d;
  d.tree.node_names = {"p"};
  std::vector<std::size_t> all(g.num_vertices());
  std::iota(all.begin(), all.end(), std::size_t{0});
  d.bags = {all};
  return d;
}

TEST(MinFill, PathHasWidthOne) {
  const Graph g = path_xyz();
  const auto d = minfill_tree_decomposition(g);
  EXPECT_EQ(d.width(), 1u);
  EXPECT_TRUE(check_tree_decomposition(g, d));
}

TEST(MinFill, CliqueOfFourHasWidthThree) {
  EXPECT_EQ(minfill_tree_decomposition(generate::complete_graph(4)).width(), 3u);
}

TEST(MinFill, EdgelessGraphHasWidthZero) {
  const Graph g({"a", "b", "c"});
  const auto d = minfill_tree_decomposition(g);
  EXPECT_EQ(d.width(), 0u);
  EXPECT_TRUE(check_tree_decomposition(g, d));
}

TEST(MinFill, IsDeterministicAndRootedAtSmallestBag) {
  const Graph g = cycle(6);
  const auto a = minfill_tree_decomposition(g), b = minfill_tree_decomposition(g);
  EXPECT_EQ(a.bags, b.bags);
  EXPECT_EQ(a.tree.edges, b.tree.edges);
  auto names = [&](std::size_t p) {
    std::vector<std::string> n;
    for (auto v : a.bags[p]) n.push_back(g.vertex_name(v));
    std::sort(n.begin(), n.end());
    return n;
  };
  for (std::size_t p = 0; p < a.bags.size(); ++p) EXPECT_LE(names(a.tree.root), names(p));
}

TEST(MinFill, OrderIsAPermutation) {
  const Graph g = cycle(7);
  auto order = minfill_order(g);
  std::sort(order.begin(), order.end());
  for (std::size_t i = 0; i < order.size(); ++i) EXPECT_EQ(order[i], i);
}

TEST(CheckTreeDecomposition, SingleBagIsValid) {
  const Graph g = generate::complete_graph(5);
  const auto check = check_tree_decomposition(g, one_bag(g));
  EXPECT_TRUE(check);
  EXPECT_EQ(check.width, 4u);
}

TEST(CheckTreeDecomposition, PathBags) {
  const Graph g = path_xyz();
  const auto check = check_tree_decomposition(g, two_bag(g, {"X", "Y"}, {"Y", "Z"}));
  EXPECT_TRUE(check);
  EXPECT_EQ(check.width, 1u);
}

TEST(CheckTreeDecomposition, RemovingYBreaksEdgeCoverage) {
  const Graph g = path_xyz();
  const auto check = check_tree_decomposition(g, two_bag(g, {"X", "Y"}, {"Z"}));
  EXPECT_FALSE(check);
  EXPECT_NE(check.message.find("condition 2"), std::string::npos) << check.message;
}

TEST(CheckTreeDecomposition, ReportsEachCondition) {
  const Graph g = path_xyz();
  const auto missing = check_tree_decomposition(g, two_bag(g, {"X", "Y"}, {"Y"}));
  EXPECT_NE(missing.message.find("condition 1"), std::string::npos) << missing.message;
  ASSERT_TRUE(missing.vertex);
  EXPECT_EQ(g.vertex_name(*missing.vertex), "Z");

  // X-Y-X split over a three-node path: X occurs at both ends only.
  TreeDecomposition d;
  d.tree.node_names = {"a", "b", "c"};
  d.tree.edges = {{0, 1}, {1, 2}};
  d.bags = {vertex_ids(g, {"X", "Y"}), vertex_ids(g, {"Y", "Z"}), vertex_ids(g, {"X"})};
  const auto disconnected = check_tree_decomposition(g, d);
  EXPECT_NE(disconnected.message.find("condition 3"), std::string::npos) << disconnected.message;
  EXPECT_EQ(g.vertex_name(*disconnected.vertex), "X");
}

TEST(ExactTreewidth, TreesHaveWidthOne) {
  generate::Rng rng(4);
  for (std::size_t n = 2; n <= 12; ++n) EXPECT_EQ(exact_treewidth(generate::random_tree(rng, n)), 1u) << n;
}

TEST(ExactTreewidth, CliquesHaveWidthNMinusOne) {
  for (std::size_t n = 1; n <= 7; ++n) EXPECT_EQ(exact_treewidth(generate::complete_graph(n)), n - 1);
}

TEST(ExactTreewidth, FiveCycleHasWidthTwo) { EXPECT_EQ(exact_treewidth(cycle(5)), 2u); }

TEST(ExactTreewidth, RefusesLargeGraphs) {
  EXPECT_THROW(exact_treewidth(generate::complete_graph(kExactTreewidthLimit + 1)), TooLarge);
}

TEST(ExactTreewidth, AtMostMinFillOnSmallGraphs) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + i % 8;
    std::vector<std::string> names;
    for (std::size_t v = 0; v < n; ++v) names.push_back("v" + std::to_string(v));
    Graph g(names);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (rng() % 3 == 0) g.add_edge(a, b);
    EXPECT_GE(minfill_tree_decomposition(g).width(), exact_treewidth(g));
  }
}

TEST(ExactTreewidth, IncidenceCanExceedPrimalByOne) {
  // Independently re-derived by an exhaustive elimination-game search.
  const Hypergraph h = make_hypergraph({{"e1", {"V2", "V4", "V6"}},
                                        {"e2", {"V1", "V3", "V7"}},
                                        {"e3", {"V1", "V3", "V5", "V7"}},
                                        {"e4", {"V5", "V6"}},
                                        {"e5", {"V2", "V4", "V7"}},
                                        {"e6", {"V1", "V2", "V6"}},
                                        {"e7", {"V1", "V2", "V6", "V7"}},
                                        {"e8", {"V3", "V5"}}});
  EXPECT_EQ(exact_treewidth(primal_graph(h)), 3u);
  EXPECT_EQ(exact_treewidth(incidence_graph(h)), 4u);
  // A lone singleton edge: primal width 0, incidence width 1.
  const Hypergraph single = make_hypergraph({{"e", {"V"}}});
  EXPECT_EQ(exact_treewidth(primal_graph(single)), 0u);
  EXPECT_EQ(exact_treewidth(incidence_graph(single)), 1u);
}

TEST(ExactTreewidth, IncidenceIsAtMostPrimalPlusOne) {
  generate::Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const Hypergraph h = generate::random_hypergraph(rng, 8, 1 + i % 8, 4);
    EXPECT_LE(exact_treewidth(incidence_graph(h)), exact_treewidth(primal_graph(h)) + 1) << "iteration " << i;
  }
}

TEST(GreedyCover, SingleHyperedgeBag) {
  const Hypergraph h = make_hypergraph({{"h", {"A", "B", "C"}}});
  const auto d = greedy_cover_lambda(h, one_bag(primal_graph(h)));
  EXPECT_EQ(d.lambda, (std::vector<std::vector<std::size_t>>{{0}}));
  EXPECT_EQ(d.width(), 1u);
}

TEST(GreedyCover, TriangleNeedsTwoEdges) {
  const Hypergraph h = make_hypergraph({{"AB", {"A", "B"}}, {"BC", {"B", "C"}}, {"CA", {"C", "A"}}});
  const auto d = greedy_cover_lambda(h, one_bag(primal_graph(h)));
  EXPECT_EQ(d.width(), 2u);
  // Ties go to the smallest id: AB first, then BC covers C.
  EXPECT_EQ(d.lambda[0], (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(check_ghd(h, d).width, 2u);
}

TEST(GreedyCover, JoinTreeDecompositionHasWidthOne) {
  generate::Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    const Hypergraph h = generate::random_acyclic_hypergraph(rng, 7, 1 + i % 5, 3);
    const auto jt = std::get<JoinTree>(gyo_acyclicity(h));
    const auto d = greedy_cover_lambda(h, ghd_from_join_tree(h, jt).base);
    EXPECT_EQ(d.width(), 1u);
    EXPECT_TRUE(check_ghd(h, d));
  }
}

GeneralizedHypertreeDecomposition chain_ghd(const Hypergraph& h) {
  GeneralizedHypertreeDecomposition d;
  const Graph g = primal_graph(h);
  d.base = two_bag(g, {"X", "Y"}, {"Y", "Z"});
  d.lambda = {{0}, {1}};
  return d;
}

TEST(CheckGhd, ChainHasWidthOne) {
  const Hypergraph h = make_hypergraph({{"h1", {"X", "Y"}}, {"h2", {"Y", "Z"}}});
  const auto check = check_ghd(h, chain_ghd(h));
  EXPECT_TRUE(check);
  EXPECT_EQ(check.width, 1u);
}

TEST(CheckGhd, EmptyLambdaNamesTheNode) {
  const Hypergraph h = make_hypergraph({{"h1", {"X", "Y"}}, {"h2", {"Y", "Z"}}});
  auto d = chain_ghd(h);
  d.lambda[1].clear();
  const auto check = check_ghd(h, d);
  EXPECT_FALSE(check);
  ASSERT_TRUE(check.node);
  EXPECT_EQ(*check.node, 1u);
  ASSERT_TRUE(check.vertex);
}

TEST(CheckGhd, InvalidBaseIsRejected) {
  const Hypergraph h = make_hypergraph({{"h1", {"X", "Y"}}, {"h2", {"Y", "Z"}}});
  auto d = chain_ghd(h);
  d.base.bags[1] = {*h.find_vertex("Z")};
  EXPECT_FALSE(check_ghd(h, d));
}

TEST(DescendantCondition, SingleNodeHolds) {
  const Hypergraph h = make_hypergraph({{"AB", {"A", "B"}}, {"BC", {"B", "C"}}, {"CA", {"C", "A"}}});
  EXPECT_TRUE(check_descendant_condition(h, heuristic_ghd(h)));
}

TEST(DescendantCondition, WitnessRootH1A) {
  const Hypergraph h = make_hypergraph({{"h1", {"A", "B"}}, {"h2", {"B", "C"}}});
  const Graph g = primal_graph(h);
  GeneralizedHypertreeDecomposition d;
  d.base.tree.node_names = {"root", "left", "right"};
  d.base.tree.edges = {{0, 1}, {0, 2}};
  d.base.tree.root = 0;
  d.base.bags = {vertex_ids(g, {"B"}), vertex_ids(g, {"A", "B"}), vertex_ids(g, {"B", "C"})};
  d.lambda = {{0}, {0}, {1}};
  ASSERT_TRUE(check_ghd(h, d));
  const auto check = check_descendant_condition(h, d);
  EXPECT_FALSE(check);
  EXPECT_EQ(*check.node, 0u);
  EXPECT_EQ(h.edge(*check.edge).id, "h1");
  EXPECT_EQ(g.vertex_name(*check.vertex), "A");
}

TEST(DescendantCondition, JoinTreeGhdsSatisfyIt) {
  generate::Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const Hypergraph h = generate::random_acyclic_hypergraph(rng, 8, 1 + i % 6, 3);
    const auto d = ghd_from_join_tree(h, std::get<JoinTree>(gyo_acyclicity(h)));
    ASSERT_TRUE(check_ghd(h, d));
    EXPECT_EQ(check_ghd(h, d).width, 1u);
    EXPECT_TRUE(check_descendant_condition(h, d));
  }
}

TEST(HeuristicGhd, ProducedDecompositionsValidate) {
  generate::Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const Hypergraph h = generate::random_hypergraph(rng, 7, 1 + i % 6, 3);
    const auto td = minfill_tree_decomposition(primal_graph(h));
    ASSERT_TRUE(check_tree_decomposition(primal_graph(h), td));
    const auto d = greedy_cover_lambda(h, td);
    const auto check = check_ghd(h, d);
    ASSERT_TRUE(check) << check.message;
    EXPECT_EQ(check.width, d.width());
  }
}

}  // namespace
}  // namespace structcsp
