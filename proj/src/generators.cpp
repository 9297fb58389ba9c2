#include "sensmatch/generators.hpp"

#include <stdexcept>
#include <vector>

#include "sensmatch/tape.hpp"

namespace sensmatch {

Graph gnp(std::size_t n, double p, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gnp: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("gnp: p must lie in [0, 1]");
  InstanceRng rng(seed);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.uniform01() < p) edges.push_back({u, v});
    }
  }
  return Graph(n, std::move(edges));
}

Graph cycle(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle: n must be >= 3");
  std::vector<Edge> edges;
  for (Vertex u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1});
  edges.push_back({0, static_cast<Vertex>(n - 1)});
  return Graph(n, std::move(edges));
}

Graph path(std::size_t n) {
  if (n < 1) throw std::invalid_argument("path: n must be >= 1");
  std::vector<Edge> edges;
  for (Vertex u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1});
  return Graph(n, std::move(edges));
}

Graph bounded_degree(std::size_t n, std::size_t max_degree, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("bounded_degree: n must be >= 1");
  if (max_degree >= n) throw std::invalid_argument("bounded_degree: max degree must be < n");
  InstanceRng rng(seed);
  std::vector<std::size_t> degree(n, 0);
  std::vector<std::vector<Vertex>> adj(n);
  std::vector<Edge> edges;
  // Random pairing attempts; saturates most vertices at max_degree.
  const std::size_t attempts = 4 * n * max_degree;
  for (std::size_t t = 0; t < attempts; ++t) {
    const auto a = static_cast<Vertex>(rng.below(n));
    const auto b = static_cast<Vertex>(rng.below(n));
    if (a == b || degree[a] >= max_degree || degree[b] >= max_degree) continue;
    bool present = false;
    for (Vertex x : adj[a]) present = present || x == b;
    if (present) continue;
    adj[a].push_back(b);
    adj[b].push_back(a);
    ++degree[a];
    ++degree[b];
    edges.push_back(Edge::of(a, b));
  }
  return Graph(n, std::move(edges));
}

WeightedGraph with_uniform_weights(const Graph& g, std::uint32_t lo, std::uint32_t hi, std::uint64_t seed) {
  if (lo < 1 || hi < lo) throw std::invalid_argument("weights: need 1 <= lo <= hi");
  InstanceRng rng(seed);
  std::vector<double> ws;
  ws.reserve(g.num_edges());
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    ws.push_back(static_cast<double>(lo + rng.below(static_cast<std::uint64_t>(hi - lo) + 1)));
  }
  return WeightedGraph(g, std::move(ws));
}

}  // namespace sensmatch
