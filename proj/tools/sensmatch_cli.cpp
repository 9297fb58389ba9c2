// sensmatch: command-line front end.
//
//   sensmatch gen {gnp|cycle|path|bounded} --n N [--p P] [--max-degree D] [--weights LO HI]
//   sensmatch match {greedy|approx|lca|weighted} --graph FILE
//   sensmatch sens --alg ALG --graph FILE [--perturb edges|vertices] [--mode M]
//   sensmatch online --graph FILE [--alg greedy|approx] [--arrival-order random|id|file]
//   sensmatch lb {greedy --n N | randomized --eps E}
//   sensmatch oracle --graph FILE
//
// Global flags: --seed, --trials, --out, --format json|csv|text, --jobs.
// Exit codes: 0 ok, 1 usage or input error, 2 budget or guard exceeded.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sensmatch/approx.hpp"
#include "sensmatch/errors.hpp"
#include "sensmatch/generators.hpp"
#include "sensmatch/greedy.hpp"
#include "sensmatch/io.hpp"
#include "sensmatch/lca.hpp"
#include "sensmatch/online.hpp"
#include "sensmatch/oracle.hpp"
#include "sensmatch/perturbation.hpp"
#include "sensmatch/sensitivity.hpp"
#include "sensmatch/weighted.hpp"

namespace {

using namespace sensmatch;

struct Globals {
  std::uint64_t seed = 1;
  std::size_t trials = 100;
  std::string out;
  std::string format = "json";
  unsigned jobs = 1;
};

struct ApproxFlags {
  std::optional<double> eps;
  std::optional<std::uint32_t> k;
  std::optional<std::uint64_t> r;
  std::optional<double> delta;
  std::uint64_t budget = kDefaultBudget;
  std::uint32_t boost = 1;

  void attach(CLI::App* app, bool with_eps = true) {
    if (with_eps) app->add_option("--eps", eps, "approximation parameter in (0, 1]; derives k, r and delta");
    app->add_option("--k", k, "phase count override");
    app->add_option("--r", r, "rounds per phase override");
    app->add_option("--delta", delta, "search parameter override");
    app->add_option("--budget", budget, "cap on nominal greedy calls");
    app->add_option("--boost", boost, "multiplier on k (with --eps)");
  }

  ApproxParams params() const {
    ApproxParams p = eps ? params_from_eps(*eps, boost) : desk_params();
    if (k) p.k = *k;
    if (r) p.r = *r;
    if (delta) p.delta = *delta;
    p.budget = budget;
    validate(p);
    return p;
  }
};

// Writes to --out (binary, so bytes match across runs) or stdout.
void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot write '" + g.out + "'");
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json edges_json(const Matching& m) {
  Json arr = Json::array();
  for (const Edge& e : m) arr.push_back({e.u, e.v});
  return arr;
}

struct LoadedGraph {
  WeightedGraph graph;
  bool weighted = false;
};

LoadedGraph load(const std::string& path) {
  LoadedGraph lg;
  lg.graph = load_edge_list(read_file(path), &lg.weighted);
  return lg;
}

std::uint32_t resolve_delta_max(const Graph& g, std::optional<std::uint32_t> delta_max) {
  const auto actual = static_cast<std::uint32_t>(g.max_degree());
  if (!delta_max) return actual;
  if (actual > *delta_max) {
    throw GuardExceeded("max degree " + std::to_string(actual) + " exceeds --delta-max " + std::to_string(*delta_max));
  }
  return *delta_max;
}

Algorithm make_algorithm(const std::string& name, const ApproxFlags& approx, double alpha, std::uint32_t delta) {
  if (name == "greedy") return greedy_algorithm();
  if (name == "approx") return approx_algorithm(approx.params());
  if (name == "lca") return lca_algorithm(delta);
  if (name == "weighted") return weighted_algorithm(alpha);
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

// ---------------------------------------------------------------------------

struct GenCmd {
  std::string kind;
  std::size_t n = 0;
  double p = 0.1;
  std::size_t max_degree = 3;
  std::vector<std::uint32_t> weights;

  void run(const Globals& g) const {
    Graph graph;
    if (kind == "gnp") {
      graph = gnp(n, p, g.seed);
    } else if (kind == "cycle") {
      graph = cycle(n);
    } else if (kind == "path") {
      graph = path(n);
    } else {
      graph = bounded_degree(n, max_degree, g.seed);
    }
    std::ostringstream out;
    if (weights.empty()) {
      write_edge_list(out, graph);
    } else {
      write_edge_list(out, with_uniform_weights(graph, weights[0], weights[1], g.seed));
    }
    emit(g, out.str());
  }
};

struct MatchCmd {
  std::string alg;
  std::string graph;
  ApproxFlags approx;
  double alpha = 2.0;
  std::optional<std::uint32_t> delta_max;
  bool probes = false;

  void run(const Globals& g) const {
    const LoadedGraph lg = load(graph);
    const Graph& G = lg.graph.graph();
    const std::uint32_t delta = alg == "lca" ? resolve_delta_max(G, delta_max) : 0;
    const Algorithm a = make_algorithm(alg, approx, alpha, delta);
    const RandomTape tape(g.seed);
    const Matching m = a.run(lg.graph, tape);

    Json probe_report;
    if (alg == "lca" && probes) {
      ProbeOracle oracle(G);
      Json per = Json::array();
      std::uint64_t total = 0, most = 0;
      for (const Edge& e : G.edges()) {
        const QueryResult q = mm_query(oracle, e, delta);
        per.push_back({{"edge", to_string(e)}, {"probes", q.probes}, {"in_matching", q.in_matching}});
        total += q.probes;
        most = std::max(most, q.probes);
      }
      probe_report["per_query"] = std::move(per);
      probe_report["max"] = most;
      probe_report["mean"] = G.num_edges() ? static_cast<double>(total) / static_cast<double>(G.num_edges()) : 0.0;
    }

    if (g.format == "json") {
      Json j;
      j["command"] = "match";
      j["algorithm"] = a.id;
      j["params"] = a.params;
      j["seed"] = g.seed;
      j["graph_digest"] = graph_digest(lg.graph);
      j["size"] = m.size();
      if (lg.weighted) j["weight"] = matching_weight(m, lg.graph);
      j["matching"] = edges_json(m);
      if (!probe_report.is_null()) j["probes"] = std::move(probe_report);
      emit(g, dump(j));
      return;
    }
    std::ostringstream out;
    if (g.format == "csv") {
      out << "u,v\n";
      for (const Edge& e : m) out << e.u << ',' << e.v << '\n';
    } else {
      out << "# algorithm=" << a.id << " params=" << a.params.dump() << " seed=" << g.seed
          << " graph=" << graph_digest(lg.graph) << '\n';
      out << "size " << m.size() << '\n';
      if (lg.weighted) out << "weight " << format_real(matching_weight(m, lg.graph)) << '\n';
      for (const Edge& e : m) out << e.u << ' ' << e.v << '\n';
    }
    emit(g, out.str());
  }
};

struct SensCmd {
  std::string alg = "greedy";
  std::string graph;
  std::string perturb = "edges";
  std::string mode = "unweighted";
  ApproxFlags approx;
  double alpha = 2.0;
  std::optional<std::uint32_t> delta_max;
  std::size_t sample_cap = kPerturbationSampleCap;
  bool no_raw = false;

  void run(const Globals& g) const {
    const LoadedGraph lg = load(graph);
    const std::uint32_t delta = alg == "lca" ? resolve_delta_max(lg.graph.graph(), delta_max) : 0;
    const Algorithm a = make_algorithm(alg, approx, alpha, delta);
    const auto population =
        perturb == "edges" ? all_edge_deletions(lg.graph.graph()) : all_vertex_deletions(lg.graph.graph());
    const auto sample = sample_perturbations(population, g.seed, sample_cap);

    EstimateOptions opt;
    opt.trials = g.trials;
    opt.base_seed = g.seed;
    opt.jobs = g.jobs;
    opt.population = population.size();
    opt.mode = mode == "weighted" ? Mode::kWeighted : mode == "normalized" ? Mode::kNormalized : Mode::kUnweighted;
    const SensitivityReport report = estimate(a, lg.graph, sample, opt);
    if (g.format == "csv") {
      std::ostringstream out;
      write_csv(out, report);
      emit(g, out.str());
    } else {
      emit(g, dump(to_json(report, !no_raw)));
    }
  }
};

struct OnlineCmd {
  std::string alg = "greedy";
  std::string graph;
  std::string arrival = "random";
  std::string arrival_file;
  ApproxFlags approx;

  void run(const Globals& g) const {
    const LoadedGraph lg = load(graph);
    const Graph& G = lg.graph.graph();
    VertexArrivalStream stream{G, {}};
    if (arrival == "id") {
      stream.order = arrival_by_id(G.num_vertices());
    } else if (arrival == "random") {
      stream.order = arrival_random(G.num_vertices(), g.seed);
    } else {
      if (arrival_file.empty()) throw std::invalid_argument("--arrival-order file needs --arrival-file");
      std::istringstream in(read_file(arrival_file));
      std::uint64_t v = 0;
      while (in >> v) stream.order.push_back(static_cast<Vertex>(v));
      if (!in.eof()) throw std::invalid_argument("arrival file must hold whitespace-separated vertex ids");
    }
    OnlineAlgorithm algorithm;
    if (alg == "approx") {
      algorithm.kind = OnlineAlgorithm::Kind::kApprox;
      algorithm.params = approx.params();
    }
    const ReplacementTrace trace = simulate(stream, algorithm, RandomTape(g.seed));

    std::ostringstream out;
    if (g.format == "csv") {
      out << "step,vertex,size,replacements\n";
      for (std::size_t i = 0; i < trace.sizes.size(); ++i) {
        out << i + 1 << ',' << stream.order[i] << ',' << trace.sizes[i] << ',' << trace.replacements[i] << '\n';
      }
      emit(g, out.str());
      return;
    }
    Json j;
    j["command"] = "online";
    j["algorithm"] = alg;
    if (alg == "approx") {
      const ApproxParams p = approx.params();
      j["params"] = {{"k", p.k}, {"r", p.r}, {"delta", p.delta}, {"budget", p.budget}};
    }
    j["seed"] = g.seed;
    j["graph_digest"] = graph_digest(G);
    j["arrival_order"] = arrival;
    j["arrivals"] = stream.order;
    j["sizes"] = trace.sizes;
    j["replacements"] = trace.replacements;
    j["total"] = trace.total;
    emit(g, dump(j));
  }
};

struct LbCmd {
  std::string which;
  std::size_t n = 10;
  double eps = 0.025;
  std::string alg = "approx";
  ApproxFlags approx;
  bool no_raw = false;

  void run(const Globals& g) const {
    if (which == "greedy") {
      const AdversarialInstance inst = adversarial_greedy_instance(n);
      const Matching before = greedy_matching(inst.graph, inst.order);
      const Matching after = greedy_matching(apply_perturbation(inst.graph, inst.deletion), inst.order);
      std::ostringstream edges;
      write_edge_list(edges, inst.graph);
      Json j;
      j["command"] = "lb";
      j["construction"] = "greedy-path";
      j["n"] = n;
      j["graph"] = edges.str();
      j["order"] = "edges ranked along the path";
      j["deletion"] = describe(inst.deletion);
      j["before"] = edges_json(before);
      j["after"] = edges_json(after);
      j["hamming"] = hamming(before, after);
      j["floor"] = n - 3;
      emit(g, dump(j));
      return;
    }
    const Algorithm a = make_algorithm(alg, approx, 2.0, 0);
    const LowerBoundReport report = randomized_lb_experiment(eps, a, g.trials, g.seed, g.jobs);
    if (g.format == "csv") {
      std::ostringstream out;
      write_csv(out, report.report);
      emit(g, out.str());
    } else {
      emit(g, dump(to_json(report, !no_raw)));
    }
  }
};

struct OracleCmd {
  std::string graph;
  std::size_t guard = kOracleVertexGuard;

  void run(const Globals& g) const {
    const LoadedGraph lg = load(graph);
    Json j;
    j["command"] = "oracle";
    j["graph_digest"] = graph_digest(lg.graph);
    const CardinalityOptimum card = max_matching(lg.graph.graph(), guard);
    j["size"] = card.size;
    j["witness"] = edges_json(card.witness);
    if (lg.weighted) {
      const WeightOptimum w = max_weight_matching(lg.graph, guard);
      j["weight"] = w.weight;
      j["weight_witness"] = edges_json(w.witness);
    }
    emit(g, dump(j));
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-sensitivity matching algorithms and coupled sensitivity experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals globals;
  app.add_option("--seed", globals.seed, "master seed");
  app.add_option("--trials", globals.trials, "trials per perturbation")->check(CLI::PositiveNumber);
  app.add_option("--out", globals.out, "output file (default stdout)");
  app.add_option("--format", globals.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--jobs", globals.jobs, "worker threads")->check(CLI::PositiveNumber);

  GenCmd gen;
  auto* gen_app = app.add_subcommand("gen", "generate a graph as an edge list");
  gen_app->add_option("kind", gen.kind)->required()->check(CLI::IsMember({"gnp", "cycle", "path", "bounded"}));
  gen_app->add_option("--n", gen.n, "vertex count")->required();
  gen_app->add_option("--p", gen.p, "edge probability (gnp)");
  gen_app->add_option("--max-degree", gen.max_degree, "degree bound (bounded)");
  gen_app->add_option("--weights", gen.weights, "integer weight range LO HI")->expected(2);

  MatchCmd match;
  auto* match_app = app.add_subcommand("match", "run a matching algorithm on a graph file");
  match_app->add_option("alg", match.alg)->required()->check(CLI::IsMember({"greedy", "approx", "lca", "weighted"}));
  match_app->add_option("--graph", match.graph, "edge-list file")->required();
  match.approx.attach(match_app);
  match_app->add_option("--alpha", match.alpha, "level base (weighted)");
  match_app->add_option("--delta-max", match.delta_max, "degree guard (lca)");
  match_app->add_flag("--probes", match.probes, "report per-edge probe counts (lca)");

  SensCmd sens;
  auto* sens_app = app.add_subcommand("sens", "estimate coupled sensitivity");
  sens_app->add_option("--alg", sens.alg)->check(CLI::IsMember({"greedy", "approx", "lca", "weighted"}));
  sens_app->add_option("--graph", sens.graph, "edge-list file")->required();
  sens_app->add_option("--perturb", sens.perturb)->check(CLI::IsMember({"edges", "vertices"}));
  sens_app->add_option("--mode", sens.mode)->check(CLI::IsMember({"unweighted", "weighted", "normalized"}));
  sens.approx.attach(sens_app);
  sens_app->add_option("--alpha", sens.alpha, "level base (weighted)");
  sens_app->add_option("--delta-max", sens.delta_max, "degree guard (lca)");
  sens_app->add_option("--sample-cap", sens.sample_cap, "max perturbations evaluated");
  sens_app->add_flag("--no-raw", sens.no_raw, "omit per-trial distances");

  OnlineCmd online;
  auto* online_app = app.add_subcommand("online", "simulate vertex arrivals with recomputation");
  online_app->add_option("--graph", online.graph, "edge-list file")->required();
  online_app->add_option("--alg", online.alg)->check(CLI::IsMember({"greedy", "approx"}));
  online_app->add_option("--arrival-order", online.arrival)->check(CLI::IsMember({"random", "id", "file"}));
  online_app->add_option("--arrival-file", online.arrival_file, "whitespace-separated vertex ids");
  online.approx.attach(online_app);

  LbCmd lb;
  auto* lb_app = app.add_subcommand("lb", "lower-bound demonstrators");
  lb_app->add_option("which", lb.which)->required()->check(CLI::IsMember({"greedy", "randomized"}));
  lb_app->add_option("--n", lb.n, "path length (greedy)");
  lb_app->add_option("--eps", lb.eps, "cycle length is 1/(10 eps) (randomized)");
  lb_app->add_option("--alg", lb.alg)->check(CLI::IsMember({"greedy", "approx"}));
  lb.approx.attach(lb_app, false);
  lb_app->add_flag("--no-raw", lb.no_raw, "omit per-trial distances");

  OracleCmd oracle;
  auto* oracle_app = app.add_subcommand("oracle", "exact maximum (weight) matching");
  oracle_app->add_option("--graph", oracle.graph, "edge-list file")->required();
  oracle_app->add_option("--guard", oracle.guard, "vertex limit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*gen_app) gen.run(globals);
    if (*match_app) match.run(globals);
    if (*sens_app) sens.run(globals);
    if (*online_app) online.run(globals);
    if (*lb_app) lb.run(globals);
    if (*oracle_app) oracle.run(globals);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 2;
  } catch (const GuardExceeded& e) {
    std::cerr << "guard exceeded: " << e.what() << '\n';
    return 2;
  } catch (const sensmatch::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
