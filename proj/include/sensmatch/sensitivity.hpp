#pragma once

// Coupled-run sensitivity estimates.
//
// For every perturbation p and trial t, A runs on G and on G - p with the
// same tape (seed derived from (base_seed, t)); the Hamming distance of the
// two outputs is recorded. The mean over trials upper-bounds the earth
// mover's distance between the output distributions, since the shared tape
// is one admissible coupling.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "sensmatch/approx.hpp"
#include "sensmatch/graph.hpp"
#include "sensmatch/greedy.hpp"
#include "sensmatch/perturbation.hpp"
#include "sensmatch/tape.hpp"

namespace sensmatch {

using Json = nlohmann::ordered_json;

/// A matching algorithm under test. Deterministic algorithms ignore the tape.
struct Algorithm {
  std::string id;
  Json params = Json::object();
  std::function<Matching(const WeightedGraph&, const RandomTape&)> run;
};

Algorithm greedy_algorithm();
Algorithm approx_algorithm(const ApproxParams& params);
/// delta is fixed up front so that G and G - p are processed identically.
Algorithm lca_algorithm(std::uint32_t delta);
Algorithm weighted_algorithm(double alpha);

enum class Mode {
  kUnweighted,  ///< |M xor M'|
  kWeighted,    ///< sum of w(e) over M xor M'
  kNormalized,  ///< weighted distance / w(deleted edge); edge deletions only
};

std::string to_string(Mode mode);

struct EstimateOptions {
  std::size_t trials = 100;
  std::uint64_t base_seed = 0;
  Mode mode = Mode::kUnweighted;
  unsigned jobs = 1;
  /// Size of the perturbation population the list was drawn from (0: the list itself).
  std::size_t population = 0;
};

struct PerturbationResult {
  Perturbation target;
  double mean = 0.0;
  double se = 0.0;  ///< sample standard deviation / sqrt(trials)
  double max = 0.0;
  std::vector<double> raw;  ///< one distance per trial
};

struct SensitivityReport {
  std::string algorithm;
  Json params;
  std::string graph_digest;
  Mode mode = Mode::kUnweighted;
  std::size_t trials = 0;
  std::uint64_t base_seed = 0;
  std::size_t population = 0;
  std::vector<PerturbationResult> perturbations;
  double worst_case = 0.0;  ///< max of the per-perturbation means
  double average = 0.0;     ///< mean of the per-perturbation means
};

/// Tape of trial t.
RandomTape trial_tape(std::uint64_t base_seed, std::uint64_t trial);

/// Validates every perturbation (NotFoundError) before running any trial.
/// Throws std::invalid_argument for trials == 0 or a vertex deletion in
/// normalized mode. Output does not depend on options.jobs.
SensitivityReport estimate(const Algorithm& algorithm, const WeightedGraph& g, std::span<const Perturbation> perturbations,
                           const EstimateOptions& options);

inline constexpr std::size_t kPerturbationSampleCap = 512;

/// All of `population` when it has at most `cap` entries, otherwise a seeded
/// sample of `cap` entries kept in population order.
std::vector<Perturbation> sample_perturbations(std::span<const Perturbation> population, std::uint64_t seed,
                                               std::size_t cap = kPerturbationSampleCap);

Json to_json(const SensitivityReport& report, bool include_raw = true);
/// One row per perturbation: target,mean,se,max,trials.
void write_csv(std::ostream& out, const SensitivityReport& report);

/// A path whose edges are ranked in path order, with the deletion of its
/// first edge: greedy keeps the odd edges before and the even edges after.
struct AdversarialInstance {
  Graph graph;
  EdgeOrder order;
  Perturbation deletion;
};

/// Throws std::invalid_argument for n < 4.
AdversarialInstance adversarial_greedy_instance(std::size_t n);

/// Length of the even cycle used for a given eps: 1/(10 eps), which must be
/// an even integer >= 4 (std::invalid_argument otherwise).
std::size_t lower_bound_cycle_length(double eps);

struct LowerBoundReport {
  std::size_t cycle_length = 0;
  Edge deleted;
  /// Trials whose output on the cycle was the perfect matching containing
  /// edge 0-1 / edge 1-2.
  std::size_t first_class_hits = 0;
  std::size_t second_class_hits = 0;
  SensitivityReport report;
};

/// Runs the algorithm on the cycle, deletes an edge of the perfect matching
/// it returns more often, and measures the coupled distance.
LowerBoundReport randomized_lb_experiment(double eps, const Algorithm& algorithm, std::size_t trials,
                                          std::uint64_t base_seed, unsigned jobs = 1);

Json to_json(const LowerBoundReport& report, bool include_raw = true);

}  // namespace sensmatch
