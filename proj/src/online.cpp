#include "sensmatch/online.hpp"

#include <numeric>
#include <stdexcept>

#include "sensmatch/greedy.hpp"

namespace sensmatch {

void validate(const VertexArrivalStream& stream) {
  const std::size_t n = stream.graph.num_vertices();
  if (stream.order.size() != n) throw std::invalid_argument("arrival order must list every vertex once");
  std::vector<bool> seen(n, false);
  for (Vertex v : stream.order) {
    if (v >= n || seen[v]) throw std::invalid_argument("arrival order is not a permutation (vertex " + std::to_string(v) + ")");
    seen[v] = true;
  }
}

std::vector<Vertex> arrival_by_id(std::size_t n) {
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  return order;
}

std::vector<Vertex> arrival_random(std::size_t n, std::uint64_t seed) {
  auto order = arrival_by_id(n);
  InstanceRng rng(seed);
  rng.shuffle(order);
  return order;
}

namespace {

std::vector<std::size_t> arrival_times(const VertexArrivalStream& stream) {
  std::vector<std::size_t> when(stream.graph.num_vertices());
  for (std::size_t i = 0; i < stream.order.size(); ++i) when[stream.order[i]] = i + 1;
  return when;
}

}  // namespace

Graph prefix_graph(const VertexArrivalStream& stream, std::size_t count) {
  validate(stream);
  const auto when = arrival_times(stream);
  std::vector<Edge> edges;
  for (const Edge& e : stream.graph.edges()) {
    if (when[e.u] <= count && when[e.v] <= count) edges.push_back(e);
  }
  return Graph(stream.graph.num_vertices(), std::move(edges));
}

ReplacementTrace simulate(const VertexArrivalStream& stream, const OnlineAlgorithm& algorithm, const RandomTape& tape,
                          bool keep_matchings) {
  validate(stream);
  const std::size_t n = stream.graph.num_vertices();
  const auto when = arrival_times(stream);
  const auto ranked = edges_in_order(stream.graph, EdgeOrder::from_tape(tape, greedy_scope()));

  ReplacementTrace trace;
  Matching previous;
  for (std::size_t i = 1; i <= n; ++i) {
    Matching current;
    if (algorithm.kind == OnlineAlgorithm::Kind::kGreedy) {
      std::vector<Edge> present;
      for (const Edge& e : ranked) {
        if (when[e.u] <= i && when[e.v] <= i) present.push_back(e);
      }
      current = greedy_over_sequence(n, present);
    } else {
      current = approx_matching(prefix_graph(stream, i), algorithm.params, tape);
    }
    const std::size_t d = hamming(previous, current);
    trace.sizes.push_back(current.size());
    trace.replacements.push_back(d);
    trace.total += d;
    if (keep_matchings) trace.matchings.push_back(current);
    previous = std::move(current);
  }
  return trace;
}

}  // namespace sensmatch
