#include <gtest/gtest.h>

#include <set>

#include "structcsp/errors.hpp"
#include "structcsp/generate.hpp"
#include "structcsp/optimize.hpp"
#include "structcsp/oracle.hpp"
#include "structcsp/reduce.hpp"
#include "support.hpp"

namespace structcsp {
namespace {

using test::make_instance;
using test::vertex_ids;

std::set<Row> row_set(const std::vector<Row>& rows) { return {rows.begin(), rows.end()}; }

TreeDecomposition primal_td(const CspInstance& p) { return minfill_tree_decomposition(primal_graph(build_hypergraph(p))); }

TreeDecomposition incidence_td(const CspInstance& p) {
  return minfill_tree_decomposition(incidence_graph(build_hypergraph(p)));
}

TEST(TreeDecompositionAcyclicization, TriangleSingleBag) {
  const CspInstance p = test::triangle_equality();
  const auto d = primal_td(p);
  ASSERT_EQ(d.bags.size(), 1u);
  const AcyclicReduction r = acyclic_from_tree_decomposition(p, d);
  ASSERT_EQ(r.instance.num_constraints(), 1u);
  EXPECT_EQ(row_set(r.instance.constraint(0).tuples), (std::set<Row>{{0, 0, 0}, {1, 1, 1}}));
  EXPECT_EQ(r.artifacts.constraint_nodes, (std::vector<std::vector<std::size_t>>{{0}, {0}, {0}}));
  EXPECT_TRUE(check_join_tree(build_hypergraph(r.instance), r.join_tree));
}

TEST(TreeDecompositionAcyclicization, ScopeBagsReproduceTheRelations) {
  const CspInstance p = test::p_chain();
  const AcyclicReduction r = acyclic_from_tree_decomposition(p, primal_td(p));
  ASSERT_EQ(r.instance.num_constraints(), 2u);
  std::set<std::set<Row>> got, want;
  for (const auto& c : r.instance.constraints()) got.insert(row_set(c.tuples));
  for (const auto& c : p.constraints()) want.insert(row_set(c.tuples));
  EXPECT_EQ(got, want);
}

TEST(TreeDecompositionAcyclicization, FalseConstraintEmptiesItsBag) {
  const CspInstance p = make_instance({"X", "Y", "Z"}, {"0", "1"},
                                      {{"C1", {"X", "Y"}, {{"0", "0"}}}, {"C2", {"Y", "Z"}, {}}});
  const AcyclicReduction r = acyclic_from_tree_decomposition(p, primal_td(p));
  bool some_empty = false;
  for (const auto& c : r.instance.constraints()) some_empty = some_empty || c.tuples.empty();
  EXPECT_TRUE(some_empty);
}

TEST(TreeDecompositionAcyclicization, BudgetAndValidity) {
  const CspInstance p = test::triangle_equality();
  EXPECT_THROW(acyclic_from_tree_decomposition(p, primal_td(p), 4), BudgetExceeded);
  TreeDecomposition bad = primal_td(p);
  bad.bags[0].pop_back();
  EXPECT_THROW(acyclic_from_tree_decomposition(p, bad), InputError);
}

TEST(GhdAcyclicization, TriangleWithTwoCoveringEdges) {
  const CspInstance p = test::triangle_equality();
  const auto d = heuristic_ghd(build_hypergraph(p));
  ASSERT_EQ(d.lambda, (std::vector<std::vector<std::size_t>>{{0, 1}}));
  const AcyclicReduction r = acyclic_from_ghd(p, d);
  ASSERT_EQ(r.instance.num_constraints(), 1u);
  EXPECT_EQ(row_set(r.instance.constraint(0).tuples), (std::set<Row>{{0, 0, 0}, {1, 1, 1}}));
  // r_max^|lambda| = 2^2.
  EXPECT_EQ(r.artifacts.node_relation_bound, 4.0);
  EXPECT_LE(r.artifacts.largest_node_relation, 4u);
}

TEST(GhdAcyclicization, UnknownEdgeAndBudget) {
  const CspInstance p = test::triangle_equality();
  auto d = heuristic_ghd(build_hypergraph(p));
  d.lambda[0] = {0, 9};
  EXPECT_THROW(acyclic_from_ghd(p, d), InputError);
  EXPECT_THROW(acyclic_from_ghd(p, heuristic_ghd(build_hypergraph(p)), 1), BudgetExceeded);
}

TEST(Acyclicization, PreservesSolutionsAndStructure) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Problem prob = generate::random(test::small_params(seed), seed);
    const CspInstance& p = prob.instance;
    const auto want = oracle::brute_force_solutions(p);
    const Hypergraph h = build_hypergraph(p);
    const auto ghd = heuristic_ghd(h);
    for (const AcyclicReduction& r : {acyclic_from_tree_decomposition(p, ghd.base), acyclic_from_ghd(p, ghd)}) {
      const Hypergraph hp = build_hypergraph(r.instance);
      ASSERT_TRUE(is_acyclic(hp)) << "seed " << seed;
      ASSERT_TRUE(check_join_tree(hp, r.join_tree)) << "seed " << seed;
      EXPECT_EQ(oracle::brute_force_solutions(r.instance), want) << "seed " << seed << " " << r.artifacts.kind;
      EXPECT_LE(static_cast<double>(r.artifacts.largest_node_relation), r.artifacts.node_relation_bound);
      for (const auto& nodes : r.artifacts.constraint_nodes) EXPECT_FALSE(nodes.empty());
    }
  }
}

TEST(WcspToCsop, SingleConstraintConstruction) {
  const CspInstance p = make_instance({"X"}, {"a", "b"}, {{"C", {"X"}, {{"a"}, {"b"}}, std::vector<Rational>{3, 5}}});
  const CsopReduction r = wcsp_to_csop(p);
  const CspInstance& q = r.instance;
  EXPECT_EQ(q.variables(), (std::vector<std::string>{"X", "__D1"}));
  ASSERT_EQ(q.num_constraints(), 1u);
  EXPECT_EQ(q.constraint(0).scope, (std::vector<VarId>{0, 1}));
  const ValueId u1 = *q.find_value("__u1_1"), u2 = *q.find_value("__u1_2");
  EXPECT_EQ(q.constraint(0).tuples, (std::vector<Row>{{0, u1}, {1, u2}}));
  EXPECT_EQ(r.weights.get(1, u1), Rational(3));
  EXPECT_EQ(r.weights.get(1, u2), Rational(5));
  EXPECT_EQ(r.weights.size(), 2u);
  const auto best = compute_optimal_solution(q, r.weights, std::get<JoinTree>(gyo_acyclicity(build_hypergraph(q))));
  ASSERT_TRUE(best);
  EXPECT_EQ(best->cost, Cost(3));
  EXPECT_EQ(r.artifacts.back_map(best->assignment), (Assignment{0}));
}

TEST(WcspToCsop, RequiresTupleWeights) {
  EXPECT_THROW(wcsp_to_csop(test::p_chain()), InputError);
}

TEST(WcspToCsop, PreservesTheAcyclicityVerdict) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    generate::Params params = test::triangle_params(seed);
    params.tuple_weights = true;
    for (const Problem& prob : {generate::acyclic(params, seed), generate::triangle_core(params, seed)}) {
      const bool before = is_acyclic(build_hypergraph(prob.instance));
      const bool after = is_acyclic(build_hypergraph(wcsp_to_csop(prob.instance).instance));
      EXPECT_EQ(before, after) << "seed " << seed;
    }
  }
}

TEST(WcspToCsop, OptimumMatchesTheWeightedOracle) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    generate::Params params = test::small_params(seed);
    params.tuple_weights = true;
    params.unary_weights = false;
    const Problem prob = generate::acyclic(params, seed);
    const CsopReduction r = wcsp_to_csop(prob.instance);
    const JoinTree jt = std::get<JoinTree>(gyo_acyclicity(build_hypergraph(r.instance)));
    const auto got = compute_optimal_solution(r.instance, r.weights, jt);
    const auto want = oracle::brute_force_weighted_optimal(prob.instance);
    ASSERT_EQ(got.has_value(), want.has_value()) << "seed " << seed;
    if (!got) continue;
    EXPECT_EQ(got->cost, want->cost) << "seed " << seed;
    const auto report = evaluate_assignment(prob.instance, r.artifacts.back_map(got->assignment));
    ASSERT_TRUE(report.satisfies);
    EXPECT_EQ(Cost(*report.tuple_cost), got->cost);
  }
}

TEST(WcspToCsop, LiftedDecompositionKeepsTheWidth) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    generate::Params params = test::triangle_params(seed);
    params.tuple_weights = true;
    params.unary_weights = false;
    const Problem prob = generate::triangle_core(params, seed);
    const auto d = heuristic_ghd(build_hypergraph(prob.instance));
    const CsopReduction r = wcsp_to_csop(prob.instance);
    const auto lifted = lift_ghd_through_wcsp(prob.instance, d, r);
    const auto check = check_ghd(build_hypergraph(r.instance), lifted);
    ASSERT_TRUE(check) << check.message;
    EXPECT_EQ(check.width, d.width());
    const auto got = solve_with_decomposition(r.instance, r.weights, lifted);
    const auto want = oracle::brute_force_weighted_optimal(prob.instance);
    ASSERT_EQ(got.has_value(), want.has_value()) << "seed " << seed;
    if (got) {
      EXPECT_EQ(got->cost, want->cost) << "seed " << seed;
    }
  }
}

/// Optimal cost of the CSOP produced by maxcsp_to_csop.
Cost maxcsp_optimum(const MaxCspReduction& r) {
  const auto best = compute_optimal_solution(r.instance, r.weights, r.join_tree);
  if (!best) throw std::logic_error("reduced Max-CSP instance has no solution");
  return best->cost;
}

TEST(MaxCspToCsop, SingleBagWithSatisfiableConstraint) {
  const CspInstance p = make_instance({"X"}, {"a", "b"}, {{"C", {"X"}, {{"a"}}}});
  const Graph g = incidence_graph(build_hypergraph(p));
  TreeDecomposition d;
  d.tree.node_names = {"n"};
  d.bags = {vertex_ids(g, {"X", "@C"})};
  const MaxCspReduction r = maxcsp_to_csop(p, d);
  const ValueId u = *r.instance.find_value("__u1_1"), unsat = *r.instance.find_value("__unsat");
  EXPECT_EQ(row_set(r.instance.constraint(0).tuples), (std::set<Row>{{0, u}, {1, unsat}}));
  const auto best = compute_optimal_solution(r.instance, r.weights, r.join_tree);
  ASSERT_TRUE(best);
  EXPECT_EQ(best->cost, Cost(0));
  EXPECT_EQ(r.artifacts.back_map(best->assignment), (Assignment{0}));
}

TEST(MaxCspToCsop, SingleBagWithEmptyConstraint) {
  const CspInstance p = make_instance({"X"}, {"a", "b"}, {{"C", {"X"}, {}}});
  const Graph g = incidence_graph(build_hypergraph(p));
  TreeDecomposition d;
  d.tree.node_names = {"n"};
  d.bags = {vertex_ids(g, {"X", "@C"})};
  const MaxCspReduction r = maxcsp_to_csop(p, d);
  const ValueId unsat = *r.instance.find_value("__unsat");
  EXPECT_EQ(row_set(r.instance.constraint(0).tuples), (std::set<Row>{{0, unsat}, {1, unsat}}));
  EXPECT_EQ(maxcsp_optimum(r), Cost(1));
}

TEST(MaxCspToCsop, SatisfiableCoreWithEmptyBigConstraintCostsOne) {
  const CspInstance p = test::theorem3_fixture();
  EXPECT_EQ(maxcsp_optimum(maxcsp_to_csop(p, incidence_td(p))), Cost(1));
  const auto oracle_result = oracle::brute_force_min_violation(p);
  EXPECT_EQ(oracle_result.violation_degree, 1u);
}

TEST(MaxCspToCsop, BagsSeeingPartOfAScopeStillAllowAViolation) {
  // C = {00, 11} on {X,Y}; CX forces X=0, CY forces Y=1, each at violation cost 3.
  // No bag holds both X and Y, so violating C alone (cost 1) must stay reachable.
  const CspInstance p({"X", "Y"}, {"0", "1"},
                      {Constraint{"C", {0, 1}, {{0, 0}, {1, 1}}, std::nullopt, std::nullopt},
                       Constraint{"CX", {0}, {{0}}, std::nullopt, Rational(3)},
                       Constraint{"CY", {1}, {{1}}, std::nullopt, Rational(3)}});
  const Graph g = incidence_graph(build_hypergraph(p));
  TreeDecomposition d;
  d.tree.node_names = {"b1", "b2", "b3", "b4"};
  d.tree.edges = {{0, 1}, {0, 2}, {1, 3}};
  d.bags = {vertex_ids(g, {"X", "@C"}), vertex_ids(g, {"@C", "Y"}), vertex_ids(g, {"X", "@CX"}),
            vertex_ids(g, {"Y", "@CY"})};
  ASSERT_TRUE(check_tree_decomposition(g, d));
  EXPECT_EQ(maxcsp_optimum(maxcsp_to_csop(p, d)), Cost(1));
  EXPECT_EQ(oracle::brute_force_min_violation(p).violation_cost, Rational(1));
}

TEST(MaxCspToCsop, ErrorsAndFreshNames) {
  const CspInstance p = test::theorem3_fixture();
  EXPECT_THROW(maxcsp_to_csop(p, incidence_td(p), 1), BudgetExceeded);
  EXPECT_THROW(maxcsp_to_csop(p, primal_td(p)), InputError);
  const CspInstance clash = make_instance({"X", "__S1"}, {"0"}, {{"C", {"X", "__S1"}, {{"0", "0"}}}});
  EXPECT_THROW(maxcsp_to_csop(clash, incidence_td(clash)), InputError);
  const CspInstance value_clash = make_instance({"X"}, {"__unsat"}, {{"C", {"X"}, {{"__unsat"}}}});
  EXPECT_THROW(maxcsp_to_csop(value_clash, incidence_td(value_clash)), InputError);
}

TEST(MaxCspToCsop, MatchesTheMinViolationOracle) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Problem prob = generate::random(test::small_params(seed, 5, 3, 4, 3), seed);
    const CspInstance& p = prob.instance;
    const MaxCspReduction r = maxcsp_to_csop(p, incidence_td(p));
    EXPECT_LE(static_cast<double>(r.artifacts.largest_node_relation), r.artifacts.node_relation_bound);
    const auto best = compute_optimal_solution(r.instance, r.weights, r.join_tree);
    ASSERT_TRUE(best) << "seed " << seed;
    const auto want = oracle::brute_force_min_violation(p);
    EXPECT_EQ(best->cost, Cost(want.violation_cost)) << "seed " << seed;
    const auto report = evaluate_assignment(p, r.artifacts.back_map(best->assignment));
    EXPECT_EQ(report.violation_cost, want.violation_cost) << "seed " << seed;
  }
}

TEST(FreshNames, AreOneBased) {
  EXPECT_EQ(fresh_tuple_selector_name(0), "__D1");
  EXPECT_EQ(fresh_scope_variable_name(2), "__S3");
  EXPECT_EQ(fresh_tuple_value_name(0, 4), "__u1_5");
}

}  // namespace
}  // namespace structcsp
