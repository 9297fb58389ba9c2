#pragma once

// Deterministic maximal matching for bounded-degree graphs, computed either
// globally or one edge at a time through a neighbor-probe oracle.
//
// Pipeline: split G into Delta oriented forests (forest i holds u -> N_u(i)
// whenever N_u(i) > u), 6-color every forest with Cole-Vishkin reduction,
// then scan edges by a color-derived key and keep each edge that has no
// already-kept neighbor. Keys take finitely many values that do not depend
// on n, so an edge's membership depends only on a bounded neighborhood.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sensmatch/graph.hpp"

namespace sensmatch {

struct ForestDecomposition {
  std::size_t num_vertices = 0;
  std::uint32_t delta = 0;
  /// parent[i][u]: parent of u in forest i (0-based), or kNoVertex.
  std::vector<std::vector<Vertex>> parent;

  /// (child, parent) pairs of forest i, by child.
  std::vector<std::pair<Vertex, Vertex>> edges(std::uint32_t forest) const;
};

/// Throws std::invalid_argument naming a vertex whose degree exceeds delta.
ForestDecomposition form_forests(const Graph& g, std::uint32_t delta);

/// Rounds of color reduction needed for ids in [0, n) to reach {0..5}.
std::uint32_t reduction_rounds(std::size_t n);

/// One reduction step of a non-root vertex with color c and parent color p.
constexpr std::uint64_t cv_step(std::uint64_t c, std::uint64_t p) noexcept {
  const auto a = static_cast<std::uint64_t>(__builtin_ctzll(c ^ p));
  return 2 * a + ((c >> a) & 1);
}

class Coloring {
 public:
  Coloring() = default;
  Coloring(std::size_t n, std::uint32_t delta, std::vector<std::uint8_t> colors, std::uint32_t rounds);

  std::size_t num_vertices() const noexcept { return n_; }
  std::uint32_t delta() const noexcept { return delta_; }
  std::uint32_t rounds() const noexcept { return rounds_; }
  /// Per-forest colors of v, one entry per forest.
  std::span<const std::uint8_t> tuple(Vertex v) const;
  std::uint8_t color(Vertex v, std::uint32_t forest) const { return tuple(v)[forest]; }

 private:
  std::size_t n_ = 0;
  std::uint32_t delta_ = 0;
  std::uint32_t rounds_ = 0;
  std::vector<std::uint8_t> colors_;
};

Coloring color_forests(const ForestDecomposition& f);

/// Ordering key of an edge: (lower color tuple, higher color tuple, port of
/// the other endpoint at the lower-colored endpoint, port at the higher one).
/// Adjacent edges always get different keys.
struct EdgeKey {
  std::vector<std::uint8_t> low;
  std::vector<std::uint8_t> high;
  std::uint32_t low_port = 0;
  std::uint32_t high_port = 0;

  auto operator<=>(const EdgeKey&) const = default;
};

/// Greedy over edges in EdgeKey order. Throws std::invalid_argument if the
/// coloring does not fit g or some edge has equal endpoint tuples.
Matching coloring_to_mm(const Graph& g, const Coloring& coloring);

/// coloring_to_mm(g, color_forests(form_forests(g, delta))).
Matching deterministic_mm(const Graph& g, std::uint32_t delta);
/// Uses delta = max degree of g.
Matching deterministic_mm(const Graph& g);

/// Answers "i-th neighbor of v" (ascending ids, 0-based i) and counts probes.
class ProbeOracle {
 public:
  explicit ProbeOracle(const Graph& g) : g_(&g) {}

  /// kNoVertex stands for "no such neighbor".
  Vertex probe(Vertex v, std::size_t i);
  std::uint64_t probes() const noexcept { return probes_; }
  void reset() noexcept { probes_ = 0; }
  std::size_t num_vertices() const noexcept { return g_->num_vertices(); }

 private:
  const Graph* g_;
  std::uint64_t probes_ = 0;
};

struct QueryResult {
  bool in_matching = false;
  std::uint64_t probes = 0;
  /// Vertices whose neighbor lists the query read, sorted.
  std::vector<Vertex> probed;
};

/// Membership of e in deterministic_mm(g, delta), evaluated locally. Every
/// call starts from an empty cache. Throws NotFoundError if e is not an edge.
QueryResult mm_query(ProbeOracle& oracle, Edge e, std::uint32_t delta);

}  // namespace sensmatch
