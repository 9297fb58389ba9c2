#include "sensmatch/weighted.hpp"

#include <cmath>
#include <stdexcept>

#include "sensmatch/greedy.hpp"

namespace sensmatch {

std::vector<Edge> WeightBuckets::edges_at(const WeightedGraph& g, std::uint32_t i) const {
  std::vector<Edge> out;
  for (std::size_t k = 0; k < level.size(); ++k) {
    if (level[k] >= i) out.push_back(g.graph().edges()[k]);
  }
  return out;
}

WeightBuckets bucket_weights(const WeightedGraph& g, double alpha, std::optional<double> max_weight) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be > 1");
  WeightBuckets b;
  b.alpha = alpha;
  const double lo = g.min_weight();
  b.scale = lo < 1.0 ? 1.0 / lo : 1.0;
  b.level.reserve(g.weights().size());
  for (double raw : g.weights()) {
    const double w = raw * b.scale;
    if (max_weight && w > *max_weight) {
      throw std::invalid_argument("weight " + std::to_string(w) + " exceeds the bound W=" + std::to_string(*max_weight));
    }
    std::uint32_t i = 0;
    double next = alpha;
    while (next <= w) {
      ++i;
      next *= alpha;
    }
    b.level.push_back(i);
    b.top = std::max(b.top, i);
  }
  return b;
}

WeightedResult weighted_run(const WeightedGraph& g, double alpha, const RandomTape& tape,
                            std::optional<double> max_weight) {
  const WeightBuckets buckets = bucket_weights(g, alpha, max_weight);
  const Graph& graph = g.graph();
  const auto order = edges_in_order(graph, EdgeOrder::from_tape(tape, weighted_scope()));
  std::vector<std::uint32_t> level_of(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) level_of[k] = buckets.level[*graph.edge_index(order[k])];

  WeightedResult out;
  out.per_level.resize(buckets.num_levels());
  for (std::uint32_t i = 0; i <= buckets.top; ++i) {
    std::vector<bool> used(graph.num_vertices(), false);
    std::vector<Edge> chosen;
    for (std::size_t k = 0; k < order.size(); ++k) {
      ++out.edge_visits;
      if (level_of[k] < i) continue;
      const Edge e = order[k];
      if (used[e.u] || used[e.v]) continue;
      used[e.u] = used[e.v] = true;
      chosen.push_back(e);
    }
    out.per_level[i] = Matching(std::move(chosen));
  }

  std::vector<bool> used(graph.num_vertices(), false);
  std::vector<Edge> merged;
  for (std::uint32_t i = buckets.top + 1; i-- > 0;) {
    for (const Edge& e : out.per_level[i]) {
      ++out.edge_visits;
      if (used[e.u] || used[e.v]) continue;
      used[e.u] = used[e.v] = true;
      merged.push_back(e);
    }
  }
  out.matching = Matching(std::move(merged));
  return out;
}

Matching weighted_matching(const WeightedGraph& g, double alpha, const RandomTape& tape,
                           std::optional<double> max_weight) {
  return weighted_run(g, alpha, tape, max_weight).matching;
}

}  // namespace sensmatch
