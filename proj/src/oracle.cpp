#include "sensmatch/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <optional>
#include <span>
#include <unordered_map>

#include "sensmatch/errors.hpp"

namespace sensmatch {
namespace {

// Value of the best matching inside the vertex set `mask`: branch on the
// lowest vertex that still has a neighbor in the mask.
class Solver {
 public:
  Solver(const Graph& g, std::span<const double> weights) : g_(g), weights_(weights), adj_(g.num_vertices(), 0) {
    for (const Edge& e : g.edges()) {
      adj_[e.u] |= std::uint32_t{1} << e.v;
      adj_[e.v] |= std::uint32_t{1} << e.u;
    }
  }

  double best(std::uint32_t mask) {
    const Vertex v = pivot(mask);
    if (v == kNoVertex) return 0.0;
    if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
    const std::uint32_t rest = mask & ~(std::uint32_t{1} << v);
    double value = best(rest);
    for (std::uint32_t nb = adj_[v] & rest; nb != 0; nb &= nb - 1) {
      const auto u = static_cast<Vertex>(std::countr_zero(nb));
      value = std::max(value, weight(v, u) + best(rest & ~(std::uint32_t{1} << u)));
    }
    memo_.emplace(mask, value);
    return value;
  }

  Matching witness(std::uint32_t mask) {
    std::vector<Edge> edges;
    for (;;) {
      const Vertex v = pivot(mask);
      if (v == kNoVertex) break;
      const double target = best(mask);
      const std::uint32_t rest = mask & ~(std::uint32_t{1} << v);
      std::optional<Vertex> pick;
      for (std::uint32_t nb = adj_[v] & rest; nb != 0; nb &= nb - 1) {
        const auto u = static_cast<Vertex>(std::countr_zero(nb));
        if (weight(v, u) + best(rest & ~(std::uint32_t{1} << u)) == target) {
          pick = u;
          break;
        }
      }
      if (pick && best(rest) != target) {
        edges.push_back(Edge::of(v, *pick));
        mask = rest & ~(std::uint32_t{1} << *pick);
      } else {
        mask = rest;
      }
    }
    return Matching(std::move(edges));
  }

 private:
  Vertex pivot(std::uint32_t mask) const {
    for (std::uint32_t m = mask; m != 0; m &= m - 1) {
      const auto v = static_cast<Vertex>(std::countr_zero(m));
      if (adj_[v] & mask) return v;
    }
    return kNoVertex;
  }

  double weight(Vertex a, Vertex b) const {
    return weights_.empty() ? 1.0 : weights_[*g_.edge_index(Edge::of(a, b))];
  }

  const Graph& g_;
  std::span<const double> weights_;
  std::vector<std::uint32_t> adj_;
  std::unordered_map<std::uint32_t, double> memo_;
};

void check_guard(const Graph& g, std::size_t guard) {
  if (guard > 32) throw std::invalid_argument("oracle guard cannot exceed 32 vertices");
  if (g.num_vertices() > guard) {
    throw GuardExceeded("exact oracle limited to " + std::to_string(guard) + " vertices, graph has " +
                        std::to_string(g.num_vertices()));
  }
}

std::uint32_t full_mask(std::size_t n) {
  return n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
}

}  // namespace

CardinalityOptimum max_matching(const Graph& g, std::size_t guard) {
  check_guard(g, guard);
  Solver solver(g, {});
  const std::uint32_t all = full_mask(g.num_vertices());
  CardinalityOptimum out;
  out.size = static_cast<std::size_t>(solver.best(all));
  out.witness = solver.witness(all);
  return out;
}

WeightOptimum max_weight_matching(const WeightedGraph& g, std::size_t guard) {
  check_guard(g.graph(), guard);
  Solver solver(g.graph(), g.weights());
  const std::uint32_t all = full_mask(g.graph().num_vertices());
  WeightOptimum out;
  out.weight = solver.best(all);
  out.witness = solver.witness(all);
  return out;
}

}  // namespace sensmatch
