// pathrank command line.  Subcommands: analyze, enumerate, verify,
// convert-markov, approx-sweep.  JSON reports and CSV tables go to
// stdout (or --out), diagnostics to stderr.
//
// Exit codes: 0 success, 1 usage or input error, 2 no path between the
// query vertices, 3 resource guard exceeded, 4 verification failed.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pathrank/approximate.hpp"
#include "pathrank/asymptotics.hpp"
#include "pathrank/enumeration.hpp"
#include "pathrank/errors.hpp"
#include "pathrank/graph.hpp"
#include "pathrank/markov.hpp"
#include "pathrank/report.hpp"
#include "pathrank/structure.hpp"

namespace {

using nlohmann::json;
using namespace pathrank;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNoPath = 2;
constexpr int kExitGuard = 3;
constexpr int kExitVerifyFailed = 4;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw InvalidInput("cannot open output file: " + out_path);
  f << text;
}

VertexId lookup(const WeightedDigraph& g, const std::string& name) {
  if (!g.has_vertex(name))
    throw InvalidInput("unknown vertex \"" + name + "\"");
  return g.vertex(name);
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string file, v1, v2, out;
  std::size_t guard_variants = VariantOptions{}.guard;
  bool explain = false;
};

int run_analyze(const AnalyzeArgs& a) {
  WeightedDigraph g = parse_graph_file(a.file);
  VertexId v1 = lookup(g, a.v1);
  VertexId v2 = lookup(g, a.v2);

  ClassifyOptions opts;
  opts.variants.guard = a.guard_variants;
  auto t0 = std::chrono::steady_clock::now();
  ClassificationDetail detail = classify_detail(g, v1, v2, opts);
  auto t1 = std::chrono::steady_clock::now();

  json j = analysis_json(g, v1, v2, detail);
  j["elapsed_ms"] =
      std::chrono::duration<double, std::milli>(t1 - t0).count();
  if (a.explain) {
    VariantOptions vopts;
    vopts.guard = a.guard_variants;
    json arr = json::array();
    for (const auto& v : enumerate_variants(g, detail.scc, v1, v2, vopts))
      arr.push_back(variant_json(g, v));
    j["variants"] = std::move(arr);
  }
  write_text(a.out, j.dump(2) + "\n");
  return kExitOk;
}

// -------------------------------------------------------------- enumerate

struct EnumerateArgs {
  std::string file, v1, v2, out;
  std::uint64_t max_rank = 0;   // 0 = unset
  double max_weight = -1.0;     // < 0 = unset
  std::size_t guard_frontier = EnumerateOptions{}.frontier_guard;
  bool paths = false;
};

int run_enumerate(const EnumerateArgs& a) {
  if (a.max_rank == 0 && a.max_weight < 0.0)
    throw InvalidInput("enumerate needs --max-rank and/or --max-weight");
  WeightedDigraph g = parse_graph_file(a.file);
  VertexId v1 = lookup(g, a.v1);
  VertexId v2 = lookup(g, a.v2);

  EnumerateOptions opts;
  if (a.max_rank > 0) opts.max_rank = a.max_rank;
  if (a.max_weight >= 0.0) opts.max_weight = a.max_weight;
  opts.frontier_guard = a.guard_frontier;
  opts.materialize_paths = a.paths;

  std::ostringstream csv;
  csv << (a.paths ? "rank,weight,path\n" : "rank,weight\n");
  auto seq = enumerate_paths(g, v1, v2, opts);
  while (auto e = seq->next()) {
    csv << e->rank << ',' << fmt(e->weight);
    if (a.paths) {
      csv << ',';
      for (std::size_t i = 0; i < e->path->edges.size(); ++i) {
        if (i) csv << '/';
        csv << e->path->edges[i];
      }
    }
    csv << '\n';
  }
  write_text(a.out, csv.str());
  return kExitOk;
}

// ----------------------------------------------------------------- verify

struct VerifyArgs {
  std::string file, v1, v2, out;
  std::uint64_t max_rank = 100'000;
  double tail_fraction = 0.9;
  double tolerance = -1.0;  // < 0: default by class
  std::size_t guard_frontier = EnumerateOptions{}.frontier_guard;
  std::size_t guard_variants = VariantOptions{}.guard;
};

int run_verify(const VerifyArgs& a) {
  if (a.max_rank < 100)
    throw InvalidInput("--max-rank must be at least 100");
  if (!(a.tail_fraction > 0.0 && a.tail_fraction <= 1.0))
    throw InvalidInput("--tail-fraction must lie in (0, 1]");
  WeightedDigraph g = parse_graph_file(a.file);
  VertexId v1 = lookup(g, a.v1);
  VertexId v2 = lookup(g, a.v2);

  ClassifyOptions copts;
  copts.variants.guard = a.guard_variants;
  AsymptoticClass analytic = classify(g, v1, v2, copts);

  json j;
  j["analytic"] = class_json(analytic);
  bool pass = false;

  if (analytic.kind == AsymptoticClass::Case::Finite) {
    if (analytic.count > a.max_rank)
      throw InvalidInput("analytic count " + std::to_string(analytic.count) +
                         " exceeds --max-rank; raise the budget to verify");
    EnumerateOptions opts;
    opts.max_rank = analytic.count + 1;
    opts.frontier_guard = a.guard_frontier;
    auto seq = enumerate_paths(g, v1, v2, opts);
    std::uint64_t n = 0;
    while (seq->next()) ++n;
    pass = n == analytic.count;
    j["enumerated_count"] = n;
    j["check"] = "finite: analytic count = enumerated count";
  } else {
    const std::uint64_t hi = a.max_rank;
    const std::uint64_t span =
        static_cast<std::uint64_t>(std::floor(a.tail_fraction * hi));
    const std::uint64_t lo = span >= hi ? 1 : hi - span + 1;
    EnumerateOptions opts;
    opts.max_rank = hi;
    opts.frontier_guard = a.guard_frontier;
    auto seq = enumerate_paths(g, v1, v2, opts);
    FitReport fit = fit_asymptotics(*seq, analytic, lo, hi);
    double tol = a.tolerance;
    if (tol < 0.0)
      tol = analytic.kind == AsymptoticClass::Case::Logarithmic ? 0.10 : 0.05;
    double gap = std::abs(fit.rate - analytic.rate) / analytic.rate;
    pass = gap <= tol;
    j["fitted_s"] = fit.rate;
    j["gap"] = gap;
    j["tolerance"] = tol;
    j["rank_window"] = {lo, hi};
    j["max_rel_residual"] = fit.max_rel_residual;
  }
  j["pass"] = pass;
  write_text(a.out, j.dump(2) + "\n");
  if (!pass) std::cerr << "verification failed\n";
  return pass ? kExitOk : kExitVerifyFailed;
}

// --------------------------------------------------------- convert-markov

struct ConvertArgs {
  std::string file, out;
};

int run_convert_markov(const ConvertArgs& a) {
  MarkovChain chain = parse_markov_csv_file(a.file);
  WeightedDigraph g = from_markov(chain);
  json j = json::parse(graph_to_json(g));
  j["matrix"] = chain.sub_stochastic() ? "sub-stochastic" : "stochastic";
  write_text(a.out, j.dump(2) + "\n");
  std::cerr << "matrix is "
            << (chain.sub_stochastic() ? "sub-stochastic" : "stochastic")
            << "; " << g.vertex_count() << " vertices, " << g.edge_count()
            << " edges\n";
  return kExitOk;
}

// ------------------------------------------------------------ approx-sweep

struct SweepArgs {
  std::string file, component, out;
  std::vector<double> bases;
};

int run_approx_sweep(const SweepArgs& a) {
  if (a.bases.empty()) throw InvalidInput("--bases needs at least one value");
  WeightedDigraph g = parse_graph_file(a.file);
  SccDecomposition scc = scc_decompose(g);

  // Pick the component: the one holding --component's vertex, or the
  // unique nontrivial non-cycle one.
  int chosen = -1;
  if (!a.component.empty()) {
    chosen = scc.component_of[lookup(g, a.component)];
  } else {
    for (int c = 0; c < static_cast<int>(scc.components.size()); ++c) {
      if (!scc.components[c].nontrivial || scc.components[c].is_cycle)
        continue;
      if (chosen >= 0)
        throw InvalidInput(
            "several non-cycle components; pick one with --component");
      chosen = c;
    }
    if (chosen < 0) throw InvalidInput("no non-cycle component to sweep");
  }
  const auto& comp = scc.components[chosen];
  if (!comp.nontrivial || comp.is_cycle)
    throw InvalidInput("component of \"" + a.component +
                       "\" is not a non-cycle strongly connected component");

  double solver = solve_log_rate(g, comp.vertices);
  auto points = approx_rate_sweep(g, comp.vertices, a.bases);

  std::ostringstream csv;
  csv << "base,rate,solver_rate\n";
  for (const auto& p : points)
    csv << fmt(p.base) << ',' << fmt(p.rate) << ',' << fmt(solver) << '\n';
  write_text(a.out, csv.str());
  return kExitOk;
}

// -------------------------------------------------------------------- gen

struct GenArgs {
  std::uint64_t seed = 1;
  int vertices = 6;
  int extra_edges = 6;
  std::string kind = "general";
};

// Random test-graph generator (dev helper): "dag" draws only forward
// edges, "scc" lays a Hamiltonian cycle first, "general" draws any
// ordered pair.  Weights are uniform in [0.5, 2].
int run_gen(const GenArgs& a) {
  if (a.vertices < 1) throw InvalidInput("--vertices must be positive");
  std::mt19937_64 rng(a.seed);
  std::uniform_real_distribution<double> weight(0.5, 2.0);
  std::uniform_int_distribution<int> pick(0, a.vertices - 1);

  std::vector<std::string> names;
  for (int i = 0; i < a.vertices; ++i) names.push_back("v" + std::to_string(i));

  std::vector<EdgeSpec> edges;
  if (a.kind == "scc" && a.vertices > 1) {
    for (int i = 0; i < a.vertices; ++i)
      edges.push_back(
          {names[i], names[(i + 1) % a.vertices], weight(rng)});
  }
  for (int k = 0; k < a.extra_edges; ++k) {
    int u = pick(rng), v = pick(rng);
    if (a.kind == "dag") {
      if (u == v) continue;
      if (u > v) std::swap(u, v);
    }
    edges.push_back({names[u], names[v], weight(rng)});
  }
  WeightedDigraph g(names, edges);
  std::cout << graph_to_json(g, 2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Ranked path-weight analysis for weighted digraphs.\n"
      "Exit codes: 0 ok, 1 usage/input error, 2 no path, 3 guard "
      "exceeded, 4 verification failed."};
  app.require_subcommand(1);

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand(
      "analyze", "Classify the ranked weight sequence between two vertices");
  analyze->add_option("graph", an.file, "graph JSON file")->required();
  analyze->add_option("v1", an.v1, "source vertex")->required();
  analyze->add_option("v2", an.v2, "target vertex")->required();
  analyze->add_option("--guard-variants", an.guard_variants,
                      "variant enumeration budget");
  analyze->add_flag("--explain", an.explain,
                    "append the itinerary variants to the report");
  analyze->add_option("--out", an.out, "write the report to a file");

  EnumerateArgs en;
  auto* enumerate = app.add_subcommand(
      "enumerate", "Stream paths by increasing weight as CSV");
  enumerate->add_option("graph", en.file, "graph JSON file")->required();
  enumerate->add_option("v1", en.v1, "source vertex")->required();
  enumerate->add_option("v2", en.v2, "target vertex")->required();
  enumerate->add_option("--max-rank", en.max_rank, "stop after this many paths");
  enumerate->add_option("--max-weight", en.max_weight,
                        "stop past this weight (inclusive)");
  enumerate->add_option("--guard-frontier", en.guard_frontier,
                        "frontier size budget");
  enumerate->add_flag("--paths", en.paths,
                      "add a path column (slash-separated edge ids)");
  enumerate->add_option("--out", en.out, "write the CSV to a file");

  VerifyArgs ve;
  auto* verify = app.add_subcommand(
      "verify", "Cross-check the analytic classification against an "
                "enumerated fit (exit 4 on mismatch)");
  verify->add_option("graph", ve.file, "graph JSON file")->required();
  verify->add_option("v1", ve.v1, "source vertex")->required();
  verify->add_option("v2", ve.v2, "target vertex")->required();
  verify->add_option("--max-rank", ve.max_rank,
                     "enumeration depth (default 100000, min 100)");
  verify->add_option("--tail-fraction", ve.tail_fraction,
                     "fit over the last fraction of ranks (default 0.9)");
  verify->add_option("--tolerance", ve.tolerance,
                     "relative gap to accept (default 0.10 logarithmic, "
                     "0.05 polynomial)");
  verify->add_option("--guard-frontier", ve.guard_frontier,
                     "frontier size budget");
  verify->add_option("--guard-variants", ve.guard_variants,
                     "variant enumeration budget");
  verify->add_option("--out", ve.out, "write the report to a file");

  ConvertArgs cv;
  auto* convert = app.add_subcommand(
      "convert-markov", "Turn a transition-matrix CSV into a graph "
                        "(weights are -log probabilities)");
  convert->add_option("matrix", cv.file, "CSV transition matrix")->required();
  convert->add_option("--out", cv.out, "write the graph JSON to a file");

  SweepArgs sw;
  auto* sweep = app.add_subcommand(
      "approx-sweep", "Uniform-approximation rates s_b against the solver");
  sweep->add_option("graph", sw.file, "graph JSON file")->required();
  sweep->add_option("--bases", sw.bases, "chain edge weights b to try")
      ->required()
      ->delimiter(',');
  sweep->add_option("--component", sw.component,
                    "vertex naming the component to sweep");
  sweep->add_option("--out", sw.out, "write the CSV to a file");

  GenArgs ge;
  auto* gen = app.add_subcommand("gen", "Random test graph to stdout");
  gen->group("");  // dev helper, hidden from help
  gen->add_option("--seed", ge.seed, "RNG seed");
  gen->add_option("--vertices", ge.vertices, "vertex count");
  gen->add_option("--edges", ge.extra_edges, "edge draws");
  gen->add_option("--kind", ge.kind, "dag | scc | general");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*analyze) return run_analyze(an);
    if (*enumerate) return run_enumerate(en);
    if (*verify) return run_verify(ve);
    if (*convert) return run_convert_markov(cv);
    if (*sweep) return run_approx_sweep(sw);
    if (*gen) return run_gen(ge);
  } catch (const NoPathError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoPath;
  } catch (const GuardExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGuard;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
