#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sensmatch/approx.hpp"
#include "sensmatch/graph.hpp"
#include "sensmatch/tape.hpp"

namespace sensmatch {

/// Vertices of a final graph arriving one at a time; each arrival brings its
/// edges to already-arrived vertices.
struct VertexArrivalStream {
  Graph graph;
  std::vector<Vertex> order;  ///< a permutation of [0, n)
};

/// Throws std::invalid_argument unless order is a permutation of the graph's vertices.
void validate(const VertexArrivalStream& stream);

std::vector<Vertex> arrival_by_id(std::size_t n);
std::vector<Vertex> arrival_random(std::size_t n, std::uint64_t seed);

/// Graph on the full id space holding the edges among the first `count` arrivals.
Graph prefix_graph(const VertexArrivalStream& stream, std::size_t count);

struct ReplacementTrace {
  std::vector<std::size_t> sizes;         ///< |M_i| after arrival i
  std::vector<std::size_t> replacements;  ///< d_H(M_i, M_{i-1}), M_0 = {}
  std::uint64_t total = 0;
  std::vector<Matching> matchings;        ///< filled when requested
};

struct OnlineAlgorithm {
  enum class Kind { kGreedy, kApprox } kind = Kind::kGreedy;
  ApproxParams params;  ///< used by kApprox
};

/// Recomputes the matching from scratch after every arrival with the same tape.
ReplacementTrace simulate(const VertexArrivalStream& stream, const OnlineAlgorithm& algorithm, const RandomTape& tape,
                          bool keep_matchings = false);

}  // namespace sensmatch
