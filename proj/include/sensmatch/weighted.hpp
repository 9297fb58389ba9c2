#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sensmatch/graph.hpp"
#include "sensmatch/tape.hpp"

namespace sensmatch {

/// Levels E_0 ⊇ E_1 ⊇ ... with E_i = {e : w(e) >= alpha^i}, after scaling
/// weights so that the minimum is at least 1.
struct WeightBuckets {
  double alpha = 2.0;
  double scale = 1.0;  ///< factor applied to every weight before bucketing
  /// level[k] = highest i with alpha^i <= scaled w(edge k), in graph edge order.
  std::vector<std::uint32_t> level;
  std::uint32_t top = 0;

  std::size_t num_levels() const noexcept { return static_cast<std::size_t>(top) + 1; }
  /// Edges of E_i in graph edge order.
  std::vector<Edge> edges_at(const WeightedGraph& g, std::uint32_t i) const;
};

/// Throws std::invalid_argument unless alpha > 1 and, when max_weight is
/// given, every scaled weight is at most max_weight.
WeightBuckets bucket_weights(const WeightedGraph& g, double alpha, std::optional<double> max_weight = std::nullopt);

struct WeightedResult {
  Matching matching;
  /// Greedy matching of each level, index = level.
  std::vector<Matching> per_level;
  /// Edges scanned by the per-level greedy runs plus edges offered to the merge.
  std::uint64_t edge_visits = 0;
};

/// Scope of the single edge order shared by all levels.
inline InvocationPath weighted_scope() { return InvocationPath{}.child(Frame::kWeightedOrder, 0); }

/// Greedy maximal matching of every level under one shared edge order, then
/// merged from the top level down, skipping edges that touch the result.
WeightedResult weighted_run(const WeightedGraph& g, double alpha, const RandomTape& tape,
                            std::optional<double> max_weight = std::nullopt);

Matching weighted_matching(const WeightedGraph& g, double alpha, const RandomTape& tape,
                           std::optional<double> max_weight = std::nullopt);

}  // namespace sensmatch
