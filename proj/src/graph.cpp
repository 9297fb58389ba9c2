#include "sensmatch/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "sensmatch/errors.hpp"
#include "sensmatch/tape.hpp"

namespace sensmatch {

Edge Edge::of(Vertex a, Vertex b) {
  if (a == b) {
    throw std::invalid_argument("self-loop at vertex " + std::to_string(a));
  }
  return a < b ? Edge{a, b} : Edge{b, a};
}

std::string to_string(const Edge& e) {
  return std::to_string(e.u) + "-" + std::to_string(e.v);
}

// ---------------------------------------------------------------------------
// Graph

Graph::Graph(std::size_t n) : n_(n) { build_adjacency(); }

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  for (const Edge& e : edges_) {
    if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) throw std::invalid_argument("edge " + to_string(e) + " is not normalized");
    if (e.v >= n_) {
      throw std::invalid_argument("edge " + to_string(e) + " has endpoint >= n=" + std::to_string(n_));
    }
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) throw std::invalid_argument("duplicate edge " + to_string(*dup));
  build_adjacency();
}

void Graph::build_adjacency() {
  offsets_.assign(n_ + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
  targets_.assign(2 * edges_.size(), 0);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  // Sorted edges emit each vertex's lower neighbors first, then its higher
  // ones, both ascending, so every list comes out sorted.
  for (const Edge& e : edges_) {
    targets_[fill[e.u]++] = e.v;
    targets_[fill[e.v]++] = e.u;
  }
  max_degree_ = 0;
  for (std::size_t v = 0; v < n_; ++v) {
    max_degree_ = std::max(max_degree_, offsets_[v + 1] - offsets_[v]);
  }
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
  if (v >= n_) throw NotFoundError("vertex " + std::to_string(v) + " not in graph");
  return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::size_t Graph::degree(Vertex v) const { return neighbors(v).size(); }

bool Graph::has_edge(Edge e) const { return edge_index(e).has_value(); }

std::optional<std::size_t> Graph::edge_index(Edge e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

// ---------------------------------------------------------------------------
// WeightedGraph

WeightedGraph::WeightedGraph(Graph graph, std::vector<double> weights)
    : graph_(std::move(graph)), weights_(std::move(weights)) {
  if (weights_.size() != graph_.num_edges()) {
    throw std::invalid_argument("weight count does not match edge count");
  }
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(weights_[i]) || weights_[i] <= 0.0) {
      throw std::invalid_argument("edge " + to_string(graph_.edges()[i]) + " has non-positive weight");
    }
  }
}

WeightedGraph WeightedGraph::from_edges(std::size_t n, std::vector<std::pair<Edge, double>> edges) {
  std::sort(edges.begin(), edges.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Edge> es;
  std::vector<double> ws;
  es.reserve(edges.size());
  ws.reserve(edges.size());
  for (auto& [e, w] : edges) {
    es.push_back(e);
    ws.push_back(w);
  }
  return WeightedGraph(Graph(n, std::move(es)), std::move(ws));
}

WeightedGraph WeightedGraph::unit(Graph graph) {
  std::vector<double> ws(graph.num_edges(), 1.0);
  return WeightedGraph(std::move(graph), std::move(ws));
}

std::optional<double> WeightedGraph::weight(Edge e) const {
  auto idx = graph_.edge_index(e);
  if (!idx) return std::nullopt;
  return weights_[*idx];
}

double WeightedGraph::min_weight() const {
  if (weights_.empty()) return 1.0;
  return *std::min_element(weights_.begin(), weights_.end());
}

double WeightedGraph::max_weight() const {
  if (weights_.empty()) return 1.0;
  return *std::max_element(weights_.begin(), weights_.end());
}

// ---------------------------------------------------------------------------
// Matching

Matching::Matching(std::vector<Edge> edges) : edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool Matching::contains(Edge e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::vector<Vertex> Matching::mates(std::size_t n) const {
  std::vector<Vertex> mate(n, kNoVertex);
  for (const Edge& e : edges_) {
    if (e.v >= n) throw std::invalid_argument("matching edge " + to_string(e) + " outside vertex range");
    mate[e.u] = e.v;
    mate[e.v] = e.u;
  }
  return mate;
}

std::vector<bool> covered_vertices(const Matching& m, std::size_t n) {
  std::vector<bool> covered(n, false);
  for (const Edge& e : m) {
    if (e.v < n) {
      covered[e.u] = true;
      covered[e.v] = true;
    }
  }
  return covered;
}

bool is_matching(const Graph& g, const Matching& m) {
  std::vector<bool> used(g.num_vertices(), false);
  for (const Edge& e : m) {
    if (!g.has_edge(e)) return false;
    if (used[e.u] || used[e.v]) return false;
    used[e.u] = used[e.v] = true;
  }
  return true;
}

bool is_maximal(const Graph& g, const Matching& m) {
  if (!is_matching(g, m)) return false;
  auto covered = covered_vertices(m, g.num_vertices());
  return std::none_of(g.edges().begin(), g.edges().end(),
                      [&](const Edge& e) { return !covered[e.u] && !covered[e.v]; });
}

std::vector<Edge> symmetric_difference(const Matching& a, const Matching& b) {
  std::vector<Edge> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::size_t hamming(const Matching& a, const Matching& b) {
  return symmetric_difference(a, b).size();
}

double weighted_hamming(const Matching& a, const Matching& b, const WeightedGraph& w) {
  double total = 0.0;
  for (const Edge& e : symmetric_difference(a, b)) {
    auto we = w.weight(e);
    if (!we) throw NotFoundError("no weight for edge " + to_string(e));
    total += *we;
  }
  return total;
}

double matching_weight(const Matching& m, const WeightedGraph& w) {
  double total = 0.0;
  for (const Edge& e : m) {
    auto we = w.weight(e);
    if (!we) throw NotFoundError("no weight for edge " + to_string(e));
    total += *we;
  }
  return total;
}

namespace {

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

std::uint64_t digest_edges(const Graph& g) {
  std::uint64_t h = mix64(g.num_vertices());
  for (const Edge& e : g.edges()) {
    h = combine64(h, e.u);
    h = combine64(h, e.v);
  }
  return h;
}

}  // namespace

std::string graph_digest(const Graph& g) { return hex64(digest_edges(g)); }

std::string graph_digest(const WeightedGraph& g) {
  std::uint64_t h = digest_edges(g.graph());
  for (double w : g.weights()) h = combine64(h, std::bit_cast<std::uint64_t>(w));
  return hex64(h);
}

}  // namespace sensmatch
