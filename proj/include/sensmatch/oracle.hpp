#pragma once

#include <cstddef>

#include "sensmatch/graph.hpp"

namespace sensmatch {

// Exact optima by memoized include/exclude branching over the set of
// still-available vertices. Exponential; intended for small graphs.

inline constexpr std::size_t kOracleVertexGuard = 24;

struct CardinalityOptimum {
  std::size_t size = 0;
  Matching witness;
};

struct WeightOptimum {
  double weight = 0.0;
  Matching witness;
};

/// Throws GuardExceeded if g has more than `guard` vertices (guard <= 32).
CardinalityOptimum max_matching(const Graph& g, std::size_t guard = kOracleVertexGuard);
WeightOptimum max_weight_matching(const WeightedGraph& g, std::size_t guard = kOracleVertexGuard);

}  // namespace sensmatch
