#include "sensmatch/approx.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "sensmatch/errors.hpp"
#include "sensmatch/greedy.hpp"
#include "sensmatch/layered.hpp"

namespace sensmatch {
namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("round count r overflows 64 bits");
  return out;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  return a > kMax - b ? kMax : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  return __builtin_mul_overflow(a, b, &out) ? std::numeric_limits<std::uint64_t>::max() : out;
}

}  // namespace

ApproxParams params_from_eps(double eps, std::uint32_t boost) {
  if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument("eps must be in (0, 1]");
  if (boost < 1) throw std::invalid_argument("boost must be >= 1");
  const double base = std::ceil(1.0 / eps + 1.0 - 1e-9);
  if (base * boost > 1e6) throw std::invalid_argument("eps too small");
  const std::uint64_t k = static_cast<std::uint64_t>(base) * boost;

  std::uint64_t r = checked_mul(4, checked_mul(k, k));
  r = checked_mul(r, 16 * k + 20);
  r = checked_mul(r, k - 1);
  for (std::uint64_t j = 0; j < k; ++j) r = checked_mul(r, 2 * k);

  ApproxParams p;
  p.eps = eps;
  p.k = static_cast<std::uint32_t>(k);
  p.r = r;
  p.delta = 1.0 / (static_cast<double>(r) * static_cast<double>(2 * k + 2));
  return p;
}

ApproxParams desk_params() { return ApproxParams{}; }

void validate(const ApproxParams& p) {
  if (p.k < 1) throw std::invalid_argument("k must be >= 1");
  if (p.r < 1) throw std::invalid_argument("r must be >= 1");
  if (!(p.delta > 0.0) || p.delta > 1.0) throw std::invalid_argument("delta must be in (0, 1]");
}

std::uint64_t nominal_total_calls(const ApproxParams& p) {
  validate(p);
  std::uint64_t total = 1;
  for (std::uint32_t l = 1; l <= p.k; ++l) {
    total = sat_add(total, sat_mul(p.r, nominal_greedy_calls(l + 1, p.delta)));
  }
  return total;
}

ApproxResult approx_run(const Graph& g, const ApproxParams& params, const RandomTape& tape) {
  const std::uint64_t nominal = nominal_total_calls(params);
  if (nominal > params.budget) {
    throw BudgetExceeded("run needs " + std::to_string(nominal) + " greedy calls, budget is " +
                         std::to_string(params.budget) + "; override k, r, delta or raise the budget");
  }

  const InvocationPath root;
  ApproxResult out;
  out.initial = randomized_greedy(g, tape);
  Matching m = out.initial;
  out.executed_calls = 1;

  for (std::uint32_t l = 1; l <= params.k; ++l) {
    const InvocationPath phase = root.child(Frame::kPhase, l);
    for (std::uint64_t i = 1; i <= params.r; ++i) {
      FindPathsStats stats;
      const auto paths = augmenting_paths(g, m, l, params.delta, tape, phase.child(Frame::kRound, i), &stats);
      m = apply_augmentations(m, paths);
      out.executed_calls += stats.executed_greedy_calls;
      out.log.push_back({l, i, stats.nominal_greedy_calls, paths.size()});
      if (params.record_rounds) out.rounds.push_back(m);
    }
  }
  out.matching = std::move(m);
  return out;
}

Matching approx_matching(const Graph& g, const ApproxParams& params, const RandomTape& tape) {
  return approx_run(g, params, tape).matching;
}

}  // namespace sensmatch
