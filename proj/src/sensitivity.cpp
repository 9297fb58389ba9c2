#include "sensmatch/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "sensmatch/errors.hpp"
#include "sensmatch/generators.hpp"
#include "sensmatch/io.hpp"
#include "sensmatch/lca.hpp"
#include "sensmatch/weighted.hpp"

namespace sensmatch {

Algorithm greedy_algorithm() {
  return {"greedy", Json::object(),
          [](const WeightedGraph& g, const RandomTape& tape) { return randomized_greedy(g.graph(), tape); }};
}

Algorithm approx_algorithm(const ApproxParams& params) {
  validate(params);
  Json p = Json::object();
  if (params.eps > 0.0) p["eps"] = params.eps;
  p["k"] = params.k;
  p["r"] = params.r;
  p["delta"] = params.delta;
  p["budget"] = params.budget;
  return {"approx", p, [params](const WeightedGraph& g, const RandomTape& tape) {
            return approx_matching(g.graph(), params, tape);
          }};
}

Algorithm lca_algorithm(std::uint32_t delta) {
  Json p = Json::object();
  p["delta_max"] = delta;
  return {"lca", p, [delta](const WeightedGraph& g, const RandomTape&) { return deterministic_mm(g.graph(), delta); }};
}

Algorithm weighted_algorithm(double alpha) {
  if (!(alpha > 1.0)) throw std::invalid_argument("alpha must be > 1");
  Json p = Json::object();
  p["alpha"] = alpha;
  return {"weighted", p,
          [alpha](const WeightedGraph& g, const RandomTape& tape) { return weighted_matching(g, alpha, tape); }};
}

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::kUnweighted:
      return "unweighted";
    case Mode::kWeighted:
      return "weighted";
    case Mode::kNormalized:
      return "normalized";
  }
  return "unknown";
}

RandomTape trial_tape(std::uint64_t base_seed, std::uint64_t trial) { return RandomTape(base_seed).derive(trial); }

SensitivityReport estimate(const Algorithm& algorithm, const WeightedGraph& g, std::span<const Perturbation> perturbations,
                           const EstimateOptions& options) {
  if (options.trials == 0) throw std::invalid_argument("trials must be >= 1");
  std::vector<double> normalizer(perturbations.size(), 1.0);
  for (std::size_t p = 0; p < perturbations.size(); ++p) {
    validate_perturbation(g.graph(), perturbations[p]);
    if (options.mode == Mode::kNormalized) {
      const auto* del = std::get_if<DeleteEdge>(&perturbations[p]);
      if (!del) throw std::invalid_argument("normalized mode needs edge deletions");
      normalizer[p] = *g.weight(del->edge);
    }
  }

  std::vector<WeightedGraph> perturbed;
  perturbed.reserve(perturbations.size());
  for (const Perturbation& p : perturbations) perturbed.push_back(apply_perturbation(g, p));

  const std::size_t trials = options.trials;
  std::vector<std::vector<double>> raw(perturbations.size(), std::vector<double>(trials, 0.0));

  auto distance = [&](const Matching& a, const Matching& b, std::size_t p) {
    if (options.mode == Mode::kUnweighted) return static_cast<double>(hamming(a, b));
    return weighted_hamming(a, b, g) / normalizer[p];
  };
  auto run_trial = [&](std::size_t t) {
    const RandomTape tape = trial_tape(options.base_seed, t);
    const Matching base = algorithm.run(g, tape);
    for (std::size_t p = 0; p < perturbations.size(); ++p) {
      raw[p][t] = distance(base, algorithm.run(perturbed[p], tape), p);
    }
  };

  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(trials)));
  if (jobs == 1) {
    for (std::size_t t = 0; t < trials; ++t) run_trial(t);
  } else {
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> workers;
    for (unsigned j = 0; j < jobs; ++j) {
      workers.emplace_back([&, j] {
        try {
          for (std::size_t t = j; t < trials; t += jobs) run_trial(t);
        } catch (...) {
          errors[j] = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  SensitivityReport report;
  report.algorithm = algorithm.id;
  report.params = algorithm.params;
  report.graph_digest = graph_digest(g);
  report.mode = options.mode;
  report.trials = trials;
  report.base_seed = options.base_seed;
  report.population = options.population ? options.population : perturbations.size();
  for (std::size_t p = 0; p < perturbations.size(); ++p) {
    PerturbationResult r;
    r.target = perturbations[p];
    r.raw = std::move(raw[p]);
    const double sum = std::accumulate(r.raw.begin(), r.raw.end(), 0.0);
    r.mean = sum / static_cast<double>(trials);
    r.max = *std::max_element(r.raw.begin(), r.raw.end());
    if (trials > 1) {
      double ss = 0.0;
      for (double x : r.raw) ss += (x - r.mean) * (x - r.mean);
      r.se = std::sqrt(ss / static_cast<double>(trials - 1)) / std::sqrt(static_cast<double>(trials));
    }
    report.perturbations.push_back(std::move(r));
  }
  if (!report.perturbations.empty()) {
    double total = 0.0;
    for (const auto& r : report.perturbations) {
      report.worst_case = std::max(report.worst_case, r.mean);
      total += r.mean;
    }
    report.average = total / static_cast<double>(report.perturbations.size());
  }
  return report;
}

std::vector<Perturbation> sample_perturbations(std::span<const Perturbation> population, std::uint64_t seed,
                                               std::size_t cap) {
  if (population.size() <= cap) return {population.begin(), population.end()};
  std::vector<std::size_t> idx(population.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  InstanceRng rng(seed);
  rng.shuffle(idx);
  idx.resize(cap);
  std::sort(idx.begin(), idx.end());
  std::vector<Perturbation> out;
  out.reserve(cap);
  for (std::size_t i : idx) out.push_back(population[i]);
  return out;
}

Json to_json(const SensitivityReport& report, bool include_raw) {
  Json j;
  j["quantity"] = "coupled-EMD-upper-bound";
  j["schema_version"] = 1;
  j["algorithm"] = report.algorithm;
  j["params"] = report.params;
  j["graph_digest"] = report.graph_digest;
  j["mode"] = to_string(report.mode);
  j["trials"] = report.trials;
  j["sample_size"] = report.perturbations.size();
  j["population"] = report.population;
  Json rows = Json::array();
  for (const auto& r : report.perturbations) {
    Json row;
    row["target"] = describe(r.target);
    row["mean"] = r.mean;
    row["se"] = r.se;
    row["max"] = r.max;
    if (include_raw) row["raw"] = r.raw;
    rows.push_back(std::move(row));
  }
  j["perturbations"] = std::move(rows);
  j["worst_case"] = report.worst_case;
  j["average"] = report.average;
  j["seeds"] = {{"base", report.base_seed}, {"trial_seed", "derive(base, trial)"}};
  return j;
}

void write_csv(std::ostream& out, const SensitivityReport& report) {
  out << "target,mean,se,max,trials\n";
  for (const auto& r : report.perturbations) {
    out << describe(r.target) << ',' << format_real(r.mean) << ',' << format_real(r.se) << ','
        << format_real(r.max) << ',' << report.trials << '\n';
  }
}

AdversarialInstance adversarial_greedy_instance(std::size_t n) {
  if (n < 4) throw std::invalid_argument("adversarial instance needs n >= 4");
  Graph g = path(n);
  std::vector<Edge> sequence(g.edges().begin(), g.edges().end());
  return {std::move(g), EdgeOrder::from_sequence(sequence), DeleteEdge{sequence.front()}};
}

std::size_t lower_bound_cycle_length(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const double x = 1.0 / (10.0 * eps);
  const double rounded = std::round(x);
  if (std::abs(x - rounded) > 1e-6 * std::max(1.0, x)) {
    throw std::invalid_argument("1/(10 eps) must be an integer");
  }
  if (rounded < 4 || rounded > 1e7 || static_cast<std::uint64_t>(rounded) % 2 != 0) {
    throw std::invalid_argument("1/(10 eps) must be an even integer >= 4");
  }
  return static_cast<std::size_t>(rounded);
}

LowerBoundReport randomized_lb_experiment(double eps, const Algorithm& algorithm, std::size_t trials,
                                          std::uint64_t base_seed, unsigned jobs) {
  const std::size_t len = lower_bound_cycle_length(eps);
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  const WeightedGraph g = WeightedGraph::unit(cycle(len));

  std::vector<Edge> first, second;
  for (Vertex i = 0; i + 1 < len; i += 2) first.push_back({i, i + 1});
  for (Vertex i = 1; i + 1 < len; i += 2) second.push_back({i, i + 1});
  second.push_back({0, static_cast<Vertex>(len - 1)});
  const Matching first_pm(first), second_pm(second);

  LowerBoundReport out;
  out.cycle_length = len;
  for (std::size_t t = 0; t < trials; ++t) {
    const Matching m = algorithm.run(g, trial_tape(base_seed, t));
    if (m == first_pm) ++out.first_class_hits;
    if (m == second_pm) ++out.second_class_hits;
  }
  out.deleted = out.first_class_hits >= out.second_class_hits ? Edge{0, 1} : Edge{1, 2};

  const std::vector<Perturbation> perturbation{DeleteEdge{out.deleted}};
  EstimateOptions options;
  options.trials = trials;
  options.base_seed = base_seed;
  options.jobs = jobs;
  options.population = len;
  out.report = estimate(algorithm, g, perturbation, options);
  return out;
}

Json to_json(const LowerBoundReport& report, bool include_raw) {
  Json j;
  j["cycle_length"] = report.cycle_length;
  j["deleted"] = to_string(report.deleted);
  j["first_class_hits"] = report.first_class_hits;
  j["second_class_hits"] = report.second_class_hits;
  j["report"] = to_json(report.report, include_raw);
  return j;
}

}  // namespace sensmatch
