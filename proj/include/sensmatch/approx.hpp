#pragma once

#include <cstdint>
#include <vector>

#include "sensmatch/graph.hpp"
#include "sensmatch/tape.hpp"

namespace sensmatch {

/// Default cap on nominal greedy calls per run.
inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

struct ApproxParams {
  double eps = 0.0;  ///< 0 when (k, r, delta) were given explicitly
  std::uint32_t k = 2;
  std::uint64_t r = 8;
  double delta = 0.05;
  std::uint64_t budget = kDefaultBudget;
  /// Keep the matching after every round in ApproxResult::rounds.
  bool record_rounds = false;
};

/// k = ceil(1/eps + 1) * boost, r = 4k^2 (16k+20)(k-1)(2k)^k, delta = 1/(r(2k+2)).
/// Throws std::invalid_argument unless 0 < eps <= 1 and boost >= 1, and
/// std::overflow_error if r does not fit in 64 bits.
ApproxParams params_from_eps(double eps, std::uint32_t boost = 1);

/// Small explicit constants that keep a run within the default budget:
/// k = 2, r = 8, delta = 0.05.
ApproxParams desk_params();

/// Throws std::invalid_argument unless k >= 1, r >= 1, 0 < delta <= 1.
void validate(const ApproxParams& params);

/// Nominal greedy calls of a full run: the initial greedy plus r searches
/// per phase. Saturates at UINT64_MAX.
std::uint64_t nominal_total_calls(const ApproxParams& params);

struct RoundRecord {
  std::uint32_t phase = 0;
  std::uint64_t round = 0;
  std::uint64_t nominal_calls = 0;
  std::size_t paths = 0;
};

struct ApproxResult {
  Matching matching;
  Matching initial;
  std::vector<RoundRecord> log;
  std::vector<Matching> rounds;  ///< filled when record_rounds is set
  std::uint64_t executed_calls = 0;
};

/// Greedy maximal matching from the tape, then phases l = 1..k with r rounds
/// each, applying the augmenting paths found in every round.
/// Throws BudgetExceeded before doing any work if the nominal call count
/// exceeds params.budget.
ApproxResult approx_run(const Graph& g, const ApproxParams& params, const RandomTape& tape);

Matching approx_matching(const Graph& g, const ApproxParams& params, const RandomTape& tape);

}  // namespace sensmatch
