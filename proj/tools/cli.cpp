#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "structcsp/acyclic.hpp"
#include "structcsp/decomposition.hpp"
#include "structcsp/errors.hpp"
#include "structcsp/generate.hpp"
#include "structcsp/hypergraph.hpp"
#include "structcsp/instance_io.hpp"
#include "structcsp/optimize.hpp"
#include "structcsp/oracle.hpp"
#include "structcsp/reduce.hpp"
#include "structcsp/structure_io.hpp"

namespace structcsp::cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

double budget_from_environment() {
  const char* env = std::getenv("STRUCTCSP_BUDGET");
  if (env == nullptr || *env == '\0') return kDefaultBudget;
  try {
    std::size_t used = 0;
    const double value = std::stod(env, &used);
    if (used != std::string(env).size() || !(value > 0)) throw std::invalid_argument(env);
    return value;
  } catch (const std::logic_error&) {
    throw InputError(std::string("STRUCTCSP_BUDGET is not a positive number: '") + env + "'");
  }
}

/// Timings, statistics and result of one command, printed to stderr as JSON.
struct RunReport {
  std::vector<std::string> command;
  std::vector<std::pair<std::string, double>> timings;
  InstanceStats stats;
  json result = json::object();

  void time(const std::string& phase, double ms) { timings.emplace_back(phase, std::max(0.0, ms)); }

  std::string dump() const {
    json doc;
    doc["command"] = command;
    json t = json::object();
    for (const auto& [phase, ms] : timings) t[phase] = ms;
    doc["timings_ms"] = std::move(t);
    json s;
    s["variables"] = stats.num_variables;
    s["constraints"] = stats.num_constraints;
    s["largest_relation"] = stats.largest_relation;
    if (stats.decomposition_width) s["decomposition_width"] = *stats.decomposition_width;
    if (stats.decomposition_vertices) s["decomposition_vertices"] = *stats.decomposition_vertices;
    doc["stats"] = std::move(s);
    doc["result"] = result;
    return doc.dump();
  }
};

json assignment_object(const CspInstance& instance, const Assignment& theta) {
  json doc = json::object();
  for (VarId v = 0; v < theta.size(); ++v) doc[instance.variable_name(v)] = instance.value_name(theta[v]);
  return doc;
}

std::string strip_instance_suffix(const std::string& path) {
  for (const std::string suffix : {".csp.json", ".json"})
    if (path.size() > suffix.size() && path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0)
      return path.substr(0, path.size() - suffix.size());
  return path;
}

std::string cache_path(const std::string& instance_path) { return strip_instance_suffix(instance_path) + ".ghd.json"; }

void write_or_print(const std::optional<std::string>& path, const std::string& text, std::ostream& out) {
  if (path) {
    write_text_file(*path, text);
  } else {
    out << text;
  }
}

// A GHD of H(P) obtained from a file (lambda filled greedily when absent).
GeneralizedHypertreeDecomposition load_ghd(const std::string& path, const Hypergraph& h) {
  const Graph g = primal_graph(h);
  GeneralizedHypertreeDecomposition d = parse_decomposition(read_text_file(path), g, &h);
  if (d.lambda.empty()) {
    if (auto check = check_tree_decomposition(g, d.base); !check)
      throw InputError("invalid decomposition '" + path + "': " + check.message);
    d = greedy_cover_lambda(h, d.base);
  }
  if (auto check = check_ghd(h, d); !check) throw InputError("invalid decomposition '" + path + "': " + check.message);
  return d;
}

// Structure used to solve a CSOP: a join tree for acyclic instances, else a GHD.
struct Structure {
  std::optional<JoinTree> join_tree;
  std::optional<GeneralizedHypertreeDecomposition> ghd;
  std::string source;
};

Structure csop_structure(const std::string& instance_path, const Hypergraph& h,
                         const std::optional<std::string>& decomposition, bool use_cache) {
  Structure s;
  if (decomposition) {
    s.ghd = load_ghd(*decomposition, h);
    s.source = "file";
    return s;
  }
  if (auto r = gyo_acyclicity(h); std::holds_alternative<JoinTree>(r)) {
    s.join_tree = std::get<JoinTree>(std::move(r));
    s.source = "join-tree";
    return s;
  }
  const std::string cached = cache_path(instance_path);
  if (use_cache) {
    std::error_code ec;
    if (fs::exists(cached, ec) && fs::last_write_time(cached, ec) >= fs::last_write_time(instance_path, ec) && !ec) {
      try {
        s.ghd = load_ghd(cached, h);
        s.source = "cache";
        return s;
      } catch (const InputError&) {
        // Stale or foreign cache: rebuild below.
      }
    }
  }
  s.ghd = heuristic_ghd(h);
  s.source = "heuristic";
  if (use_cache) {
    try {
      write_text_file(cached, serialize_decomposition(*s.ghd, primal_graph(h), h));
    } catch (const InputError&) {
      // The cache is best effort.
    }
  }
  return s;
}

TreeDecomposition incidence_decomposition(const Hypergraph& h, const std::optional<std::string>& decomposition) {
  const Graph g = incidence_graph(h);
  if (!decomposition) return minfill_tree_decomposition(g);
  TreeDecomposition d = parse_decomposition(read_text_file(*decomposition), g, nullptr).base;
  if (auto check = check_tree_decomposition(g, d); !check)
    throw InputError("invalid incidence decomposition '" + *decomposition + "': " + check.message);
  return d;
}

json optimal_json(const CspInstance& instance, const OptimalSolution& s) {
  json doc;
  doc["status"] = "optimal";
  doc["cost"] = s.cost.to_string();
  doc["assignment"] = assignment_object(instance, s.assignment);
  return doc;
}

json unsatisfiable_json() { return json{{"status", "unsatisfiable"}}; }

struct SolveOptions {
  std::string instance;
  std::string mode = "csop";
  std::string monoid = "sum";
  std::optional<std::string> decomposition;
  std::optional<double> budget;
  bool enumerate = false;
  std::optional<std::size_t> limit;
  bool no_cache = false;
  bool allow_reserved = false;
  bool quiet = false;
};

int cmd_solve(const SolveOptions& o, RunReport& report, std::ostream& out, std::ostream& err) {
  const double budget = o.budget.value_or(budget_from_environment());
  const CostMonoid& monoid = CostMonoid::by_name(o.monoid);

  auto t = Clock::now();
  const Problem problem = load_instance(o.instance, ParseOptions{o.allow_reserved});
  const CspInstance& p = problem.instance;
  report.time("parse", elapsed_ms(t));
  report.stats = instance_stats(p);
  const Hypergraph h = build_hypergraph(p);

  auto finish = [&](const SolveOutcome& s, const CspInstance& target, json extra = json::object()) {
    json doc = s ? optimal_json(target, *s) : unsatisfiable_json();
    for (auto& [k, v] : extra.items()) doc[k] = v;
    out << doc.dump() << "\n";
    report.result = doc;
    return s ? kOk : kUnsatisfiable;
  };

  if (o.mode == "csop") {
    t = Clock::now();
    const Structure s = csop_structure(o.instance, h, o.decomposition, !o.no_cache);
    report.time("decompose", elapsed_ms(t));
    report.result["structure"] = s.source;
    if (s.join_tree) {
      report.stats.decomposition_width = 1;
      report.stats.decomposition_vertices = s.join_tree->tree.size();
    } else {
      report.stats.decomposition_width = s.ghd->width();
      report.stats.decomposition_vertices = s.ghd->base.tree.size();
    }

    if (o.enumerate) {
      t = Clock::now();
      std::optional<AcyclicReduction> reduction;
      if (s.ghd) reduction = acyclic_from_ghd(p, *s.ghd, budget);
      report.time("transform", elapsed_ms(t));
      t = Clock::now();
      const ReducedInstance reduced = reduction ? full_reduce(reduction->instance, reduction->join_tree)
                                                : full_reduce(p, *s.join_tree);
      std::size_t count = 0;
      if (reduced.consistent) {
        SolutionEnumerator it(reduced);
        while (!o.limit || count < *o.limit) {
          auto theta = it.next();
          if (!theta) break;
          const Assignment a = reduction ? reduction->artifacts.back_map(*theta) : *theta;
          out << assignment_json(p, a) << "\n";
          ++count;
        }
      }
      report.time("solve", elapsed_ms(t));
      report.result["solutions"] = count;
      return count > 0 ? kOk : kUnsatisfiable;
    }

    t = Clock::now();
    SolveOutcome result;
    if (s.join_tree) {
      result = compute_optimal_solution(p, problem.unary_weights, *s.join_tree, monoid);
    } else {
      result = solve_with_decomposition(p, problem.unary_weights, *s.ghd, monoid, budget);
    }
    report.time("solve", elapsed_ms(t));
    return finish(result, p);
  }

  if (o.enumerate) throw InputError("--enumerate is only available in csop mode");

  if (o.mode == "wcsp") {
    if (!problem.unary_weights.empty()) err << "note: unary weights are ignored in wcsp mode\n";
    t = Clock::now();
    const CsopReduction reduction = wcsp_to_csop(p);
    report.time("transform", elapsed_ms(t));
    t = Clock::now();
    std::optional<JoinTree> tree;
    std::optional<GeneralizedHypertreeDecomposition> lifted;
    if (o.decomposition) {
      lifted = lift_ghd_through_wcsp(p, load_ghd(*o.decomposition, h), reduction);
    } else if (auto r = gyo_acyclicity(build_hypergraph(reduction.instance)); std::holds_alternative<JoinTree>(r)) {
      tree = std::get<JoinTree>(std::move(r));
    } else {
      lifted = lift_ghd_through_wcsp(p, heuristic_ghd(h), reduction);
    }
    report.time("decompose", elapsed_ms(t));
    report.stats.decomposition_width = tree ? 1 : lifted->width();
    report.stats.decomposition_vertices = tree ? tree->tree.size() : lifted->base.tree.size();
    t = Clock::now();
    SolveOutcome result = tree ? compute_optimal_solution(reduction.instance, reduction.weights, *tree, monoid)
                               : solve_with_decomposition(reduction.instance, reduction.weights, *lifted, monoid, budget);
    if (result) result->assignment = reduction.artifacts.back_map(result->assignment);
    report.time("solve", elapsed_ms(t));
    return finish(result, p);
  }

  if (o.mode == "maxcsp") {
    if (!monoid.is_sum()) throw InputError("maxcsp mode counts violations and needs the sum monoid");
    t = Clock::now();
    const TreeDecomposition d = incidence_decomposition(h, o.decomposition);
    report.time("decompose", elapsed_ms(t));
    report.stats.decomposition_width = d.width();
    report.stats.decomposition_vertices = d.tree.size();
    t = Clock::now();
    const MaxCspReduction reduction = maxcsp_to_csop(p, d, budget);
    report.time("transform", elapsed_ms(t));
    t = Clock::now();
    SolveOutcome result = compute_optimal_solution(reduction.instance, reduction.weights, reduction.join_tree, monoid);
    if (!result) throw std::logic_error("the Max-CSP encoding has no solution");
    result->assignment = reduction.artifacts.back_map(result->assignment);
    report.time("solve", elapsed_ms(t));
    const EvaluationReport eval = evaluate_assignment(p, result->assignment);
    return finish(result, p, json{{"violations", eval.violation_degree}});
  }
  throw InputError("unknown mode '" + o.mode + "'");
}

int cmd_check(const std::string& path, bool allow_reserved, std::ostream& out) {
  const Problem problem = load_instance(path, ParseOptions{allow_reserved});
  const CspInstance& p = problem.instance;
  const Hypergraph h = build_hypergraph(p);
  out << "variables: " << p.num_variables() << ", constraints: " << p.num_constraints()
      << ", largest relation: " << p.largest_relation() << "\n";
  const bool acyclic = is_acyclic(h);
  if (acyclic) {
    out << "acyclic: yes, ghw ≤ 1\n";
  } else {
    out << "acyclic: no\n";
    out << "ghw ≤ " << heuristic_ghd(h).width() << " (upper bound, min-fill + greedy cover)\n";
  }
  out << "primal treewidth ≤ " << minfill_tree_decomposition(primal_graph(h)).width()
      << " (upper bound, min-fill)\n";
  out << "incidence treewidth ≤ " << minfill_tree_decomposition(incidence_graph(h)).width()
      << " (upper bound, min-fill)\n";
  return kOk;
}

int cmd_decompose(const std::string& path, const std::string& kind, const std::optional<std::string>& output,
                  bool allow_reserved, std::ostream& out, std::ostream& err) {
  const Problem problem = load_instance(path, ParseOptions{allow_reserved});
  const Hypergraph h = build_hypergraph(problem.instance);
  std::size_t width = 0;
  std::string text;
  if (kind == "ghd") {
    const auto r = gyo_acyclicity(h);
    const GeneralizedHypertreeDecomposition d =
        std::holds_alternative<JoinTree>(r) ? ghd_from_join_tree(h, std::get<JoinTree>(r)) : heuristic_ghd(h);
    width = d.width();
    text = serialize_decomposition(d, primal_graph(h), h);
  } else if (kind == "td") {
    const Graph g = primal_graph(h);
    const TreeDecomposition d = minfill_tree_decomposition(g);
    width = d.width();
    text = serialize_decomposition(d, g);
  } else if (kind == "incidence") {
    const Graph g = incidence_graph(h);
    const TreeDecomposition d = minfill_tree_decomposition(g);
    width = d.width();
    text = serialize_decomposition(d, g);
  } else {
    const auto r = gyo_acyclicity(h);
    if (!std::holds_alternative<JoinTree>(r)) {
      err << "not acyclic: no join tree exists\n";
      return kInputError;
    }
    width = 1;
    text = serialize_join_tree(std::get<JoinTree>(r), h);
  }
  write_or_print(output, text, out);
  err << kind << " width " << width << (kind == "join-tree" ? "" : " (upper bound)") << "\n";
  return kOk;
}

int cmd_convert(const std::string& path, const std::string& mode, const std::optional<std::string>& decomposition,
                const std::optional<std::string>& output, std::optional<std::string> map_path, bool allow_reserved,
                double budget, std::ostream& out) {
  const Problem problem = load_instance(path, ParseOptions{allow_reserved});
  const CspInstance& p = problem.instance;
  const Hypergraph h = build_hypergraph(p);
  std::string text;
  ReductionArtifacts artifacts;
  if (mode == "wcsp") {
    CsopReduction r = wcsp_to_csop(p);
    text = serialize_instance(Problem{r.instance, r.weights});
    artifacts = std::move(r.artifacts);
  } else if (mode == "maxcsp") {
    MaxCspReduction r = maxcsp_to_csop(p, incidence_decomposition(h, decomposition), budget);
    text = serialize_instance(Problem{r.instance, r.weights});
    artifacts = std::move(r.artifacts);
  } else {
    GeneralizedHypertreeDecomposition d;
    if (decomposition) {
      d = load_ghd(*decomposition, h);
    } else if (auto jt = gyo_acyclicity(h); std::holds_alternative<JoinTree>(jt)) {
      d = ghd_from_join_tree(h, std::get<JoinTree>(jt));
    } else {
      d = heuristic_ghd(h);
    }
    AcyclicReduction r = acyclic_from_ghd(p, d, budget);
    text = serialize_instance(Problem{r.instance, problem.unary_weights});
    artifacts = std::move(r.artifacts);
  }
  write_or_print(output, text, out);
  if (!map_path && output) map_path = strip_instance_suffix(*output) + ".map.json";
  if (map_path) write_text_file(*map_path, serialize_artifacts(artifacts));
  return kOk;
}

int cmd_oracle(const std::string& path, const std::string& mode, const std::string& monoid_name, bool allow_reserved,
               std::ostream& out) {
  const Problem problem = load_instance(path, ParseOptions{allow_reserved});
  const CspInstance& p = problem.instance;
  const CostMonoid& monoid = CostMonoid::by_name(monoid_name);
  if (mode == "solutions") {
    const auto all = oracle::brute_force_solutions(p);
    for (const Assignment& a : all) out << assignment_json(p, a) << "\n";
    return all.empty() ? kUnsatisfiable : kOk;
  }
  if (mode == "maxcsp") {
    const auto best = oracle::brute_force_min_violation(p);
    json doc{{"status", "optimal"},
             {"cost", to_string(best.violation_cost)},
             {"violations", best.violation_degree},
             {"assignment", assignment_object(p, best.assignment)}};
    out << doc.dump() << "\n";
    return kOk;
  }
  const auto best =
      mode == "wcsp" ? oracle::brute_force_weighted_optimal(p, monoid) : oracle::brute_force_optimal(p, problem.unary_weights, monoid);
  json doc = best ? optimal_json(p, OptimalSolution{best->assignment, best->cost}) : unsatisfiable_json();
  out << doc.dump() << "\n";
  return best ? kOk : kUnsatisfiable;
}

struct GenerateOptions {
  std::string family = "acyclic";
  std::uint64_t seed = 1;
  generate::Params params;
  std::size_t length = 3;
  std::size_t tuples = 0;
  std::optional<std::string> output;
};

int cmd_generate(GenerateOptions o, std::ostream& out) {
  Problem p;
  if (o.family == "chain") {
    p = generate::chain(o.length, o.params.domain, o.seed, o.tuples, o.params.density, o.params.tuple_weights);
  } else if (o.family == "acyclic") {
    p = generate::acyclic(o.params, o.seed);
  } else if (o.family == "triangle-core") {
    p = generate::triangle_core(o.params, o.seed);
  } else {
    p = generate::random(o.params, o.seed);
  }
  write_or_print(o.output, serialize_instance(p), out);
  return kOk;
}

int cmd_bench(const std::string& family, const std::vector<std::size_t>& sizes, std::size_t repeat, std::size_t domain,
              std::size_t tuples, std::uint64_t seed, std::ostream& out) {
  if (family != "chain") throw InputError("bench supports the chain family only");
  out << "family,constraints,repeat,median_ms,min_ms,max_ms\n";
  for (const BenchRow& row : bench_chain(sizes, repeat, domain, tuples, seed))
    out << family << "," << row.constraints << "," << repeat << "," << row.median_ms << "," << row.min_ms << ","
        << row.max_ms << "\n";
  return kOk;
}

}  // namespace

double time_chain_solve(const Problem& p) {
  const auto t = Clock::now();
  const auto jt = gyo_acyclicity(build_hypergraph(p.instance));
  if (!std::holds_alternative<JoinTree>(jt)) throw std::logic_error("chain instance reported cyclic");
  const auto s = compute_optimal_solution(p.instance, p.unary_weights, std::get<JoinTree>(jt));
  if (!s) throw std::logic_error("planted chain instance reported unsatisfiable");
  return elapsed_ms(t);
}

std::vector<BenchRow> bench_chain(const std::vector<std::size_t>& sizes, std::size_t repeat, std::size_t domain,
                                  std::size_t tuples, std::uint64_t seed) {
  if (repeat == 0) throw InputError("--repeat must be positive");
  std::vector<Problem> problems;
  for (std::size_t size : sizes) problems.push_back(generate::chain(size, domain, seed, tuples));
  // One untimed warm-up round, then the sizes interleaved so drift hits every size alike.
  std::vector<std::vector<double>> times(sizes.size());
  for (std::size_t r = 0; r <= repeat; ++r)
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      const double ms = time_chain_solve(problems[i]);
      if (r > 0) times[i].push_back(ms);
    }
  std::vector<BenchRow> rows;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    auto& t = times[i];
    std::sort(t.begin(), t.end());
    const double median = t.size() % 2 ? t[t.size() / 2] : (t[t.size() / 2 - 1] + t[t.size() / 2]) / 2;
    rows.push_back(BenchRow{sizes[i], median, t.front(), t.back()});
  }
  return rows;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structural decomposition toolkit for CSOP, weighted CSP and Max-CSP", "structcsp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "structcsp 1.0");

  bool allow_reserved = false;
  const std::vector<std::string> modes{"csop", "wcsp", "maxcsp"};

  std::string check_path;
  auto* check = app.add_subcommand("check", "Acyclicity verdict and width upper bounds");
  check->add_option("instance", check_path, "Instance file (.csp.json)")->required()->check(CLI::ExistingFile);
  check->add_flag("--allow-reserved-names", allow_reserved, "Accept names starting with \"__\"");

  std::string dec_path, dec_kind = "ghd";
  std::optional<std::string> dec_output;
  auto* decompose = app.add_subcommand("decompose", "Write a decomposition of the instance's hypergraph");
  decompose->add_option("instance", dec_path, "Instance file")->required()->check(CLI::ExistingFile);
  decompose->add_option("--kind", dec_kind, "ghd, td (primal), incidence or join-tree")
      ->check(CLI::IsMember({"ghd", "td", "incidence", "join-tree"}));
  decompose->add_option("-o,--output", dec_output, "Output file (default stdout)");
  decompose->add_flag("--allow-reserved-names", allow_reserved, "Accept names starting with \"__\"");

  SolveOptions so;
  auto* solve = app.add_subcommand("solve", "Solve exactly and print the optimal solution as JSON");
  solve->add_option("instance", so.instance, "Instance file")->required()->check(CLI::ExistingFile);
  solve->add_option("--mode", so.mode, "csop, wcsp or maxcsp")->check(CLI::IsMember(modes));
  solve->add_option("--decomposition", so.decomposition, "Decomposition file (.ghd.json)")->check(CLI::ExistingFile);
  solve->add_option("--monoid", so.monoid, "sum or max")->check(CLI::IsMember({"sum", "max"}));
  solve->add_option("--budget", so.budget, "Tuple budget for transformations (env STRUCTCSP_BUDGET)")
      ->check(CLI::PositiveNumber);
  solve->add_flag("--enumerate", so.enumerate, "Print every solution, one per line (csop)");
  solve->add_option("--limit", so.limit, "Stop after this many solutions");
  solve->add_flag("--no-cache", so.no_cache, "Neither read nor write <name>.ghd.json");
  solve->add_flag("-q,--quiet", so.quiet, "Do not print the run report on stderr");
  solve->add_flag("--allow-reserved-names", so.allow_reserved, "Accept names starting with \"__\"");

  std::string conv_path, conv_mode = "wcsp";
  std::optional<std::string> conv_dec, conv_out, conv_map;
  std::optional<double> conv_budget;
  auto* convert = app.add_subcommand("convert", "Transform an instance and write a back-mapping artifact");
  convert->add_option("instance", conv_path, "Instance file")->required()->check(CLI::ExistingFile);
  convert->add_option("--mode", conv_mode, "wcsp, maxcsp or acyclic")
      ->check(CLI::IsMember({"wcsp", "maxcsp", "acyclic"}));
  convert->add_option("--decomposition", conv_dec, "Decomposition file")->check(CLI::ExistingFile);
  convert->add_option("-o,--output", conv_out, "Output instance (default stdout)");
  convert->add_option("--map", conv_map, "Back-mapping file (default <output>.map.json)");
  convert->add_option("--budget", conv_budget, "Tuple budget")->check(CLI::PositiveNumber);
  convert->add_flag("--allow-reserved-names", allow_reserved, "Accept names starting with \"__\"");

  std::string or_path, or_mode = "csop", or_monoid = "sum";
  auto* orc = app.add_subcommand("oracle", "Brute-force reference answers");
  orc->add_option("instance", or_path, "Instance file")->required()->check(CLI::ExistingFile);
  orc->add_option("--mode", or_mode, "solutions, csop, wcsp or maxcsp")
      ->check(CLI::IsMember({"solutions", "csop", "wcsp", "maxcsp"}));
  orc->add_option("--monoid", or_monoid, "sum or max")->check(CLI::IsMember({"sum", "max"}));
  orc->add_flag("--allow-reserved-names", allow_reserved, "Accept names starting with \"__\"");

  GenerateOptions go;
  bool no_unary = false;
  auto* gen = app.add_subcommand("generate", "Generate a seeded random instance");
  gen->add_option("--family", go.family, "chain, acyclic, triangle-core or random")
      ->check(CLI::IsMember({"chain", "acyclic", "triangle-core", "random"}));
  gen->add_option("--seed", go.seed, "Random seed");
  gen->add_option("--variables", go.params.variables, "Maximum number of variables");
  gen->add_option("--domain", go.params.domain, "Domain size");
  gen->add_option("--constraints", go.params.constraints, "Number of constraints");
  gen->add_option("--max-arity", go.params.max_arity, "Maximum scope size");
  gen->add_option("--density", go.params.density, "Fraction of tuples kept")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--plant", go.params.plant_probability, "Probability of planting a hidden solution")
      ->check(CLI::Range(0.0, 1.0));
  gen->add_option("--length", go.length, "Chain length (constraints)");
  gen->add_option("--tuples", go.tuples, "Tuples per chain relation (0 = density)");
  gen->add_flag("--tuple-weights", go.params.tuple_weights, "Attach tuple weights");
  gen->add_flag("--no-unary-weights", no_unary, "Omit unary weights");
  gen->add_option("-o,--output", go.output, "Output file (default stdout)");

  std::string bench_family = "chain";
  std::vector<std::size_t> bench_sizes{100, 200};
  std::size_t bench_repeat = 3, bench_domain = 4, bench_tuples = 6;
  std::uint64_t bench_seed = 1;
  auto* bench = app.add_subcommand("bench", "Median solve times as CSV");
  bench->add_option("--family", bench_family, "Instance family (chain)");
  bench->add_option("--sizes", bench_sizes, "Comma-separated constraint counts")->delimiter(',');
  bench->add_option("--repeat", bench_repeat, "Runs per size");
  bench->add_option("--domain", bench_domain, "Domain size");
  bench->add_option("--tuples", bench_tuples, "Tuples per relation");
  bench->add_option("--seed", bench_seed, "Random seed");

  std::vector<std::string> argv_storage{"structcsp"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  RunReport report;
  report.command = args;
  try {
    if (check->parsed()) return cmd_check(check_path, allow_reserved, out);
    if (decompose->parsed()) return cmd_decompose(dec_path, dec_kind, dec_output, allow_reserved, out, err);
    if (solve->parsed()) {
      int code = kInternalError;
      try {
        code = cmd_solve(so, report, out, err);
      } catch (const Error& e) {
        report.result = json{{"error", e.what()}};
        if (!so.quiet) err << report.dump() << "\n";
        throw;
      }
      if (!so.quiet) err << report.dump() << "\n";
      return code;
    }
    if (convert->parsed())
      return cmd_convert(conv_path, conv_mode, conv_dec, conv_out, conv_map, allow_reserved,
                         conv_budget.value_or(budget_from_environment()), out);
    if (orc->parsed()) return cmd_oracle(or_path, or_mode, or_monoid, allow_reserved, out);
    if (gen->parsed()) {
      go.params.unary_weights = !no_unary;
      return cmd_generate(go, out);
    }
    if (bench->parsed())
      return cmd_bench(bench_family, bench_sizes, bench_repeat, bench_domain, bench_tuples, bench_seed, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInputError;
}

}  // namespace structcsp::cli
