#pragma once

#include <cstdint>

#include "sensmatch/graph.hpp"

namespace sensmatch {

// Seeded instance generators. Output is a pure function of the arguments.
// Invalid parameters throw std::invalid_argument.

/// Erdos-Renyi G(n, p).
Graph gnp(std::size_t n, double p, std::uint64_t seed);
/// Simple cycle 0-1-...-(n-1)-0; needs n >= 3.
Graph cycle(std::size_t n);
/// Path 0-1-...-(n-1); n >= 1.
Graph path(std::size_t n);
/// Random graph with maximum degree <= max_degree; needs max_degree < n.
Graph bounded_degree(std::size_t n, std::size_t max_degree, std::uint64_t seed);

/// Attaches i.i.d. integer weights drawn uniformly from [lo, hi].
WeightedGraph with_uniform_weights(const Graph& g, std::uint32_t lo, std::uint32_t hi, std::uint64_t seed);

}  // namespace sensmatch
