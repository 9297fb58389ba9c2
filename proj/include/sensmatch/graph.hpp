#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sensmatch {

using Vertex = std::uint32_t;

inline constexpr Vertex kNoVertex = static_cast<Vertex>(-1);

/// Unordered vertex pair, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  /// Normalizes the endpoint order. Throws std::invalid_argument on a == b.
  static Edge of(Vertex a, Vertex b);

  bool touches(Vertex x) const noexcept { return u == x || v == x; }
  bool shares_endpoint(const Edge& o) const noexcept {
    return touches(o.u) || touches(o.v);
  }
  Vertex other(Vertex x) const noexcept { return x == u ? v : u; }

  auto operator<=>(const Edge&) const = default;
};

struct EdgeHash {
  std::size_t operator()(const Edge& e) const noexcept {
    return std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(e.u) << 32) | e.v);
  }
};

std::string to_string(const Edge& e);

/// Immutable simple undirected graph over the identity space [0, n).
///
/// Edges are kept sorted lexicographically and adjacency lists are sorted by
/// vertex id; the position of a neighbor in that list is its port number.
/// Deleting a vertex leaves its id in place as an isolated vertex.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);
  /// Throws std::invalid_argument on self-loops, duplicates, or ids >= n.
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  bool has_vertex(Vertex v) const noexcept { return v < n_; }

  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const;
  std::size_t degree(Vertex v) const;
  std::size_t max_degree() const noexcept { return max_degree_; }

  bool has_edge(Edge e) const;
  /// Position of e in edges(), if present.
  std::optional<std::size_t> edge_index(Edge e) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void build_adjacency();

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
  std::size_t max_degree_ = 0;
};

/// A graph with one positive weight per edge, aligned with graph().edges().
class WeightedGraph {
 public:
  WeightedGraph() = default;
  /// Throws std::invalid_argument on size mismatch or non-positive / non-finite weights.
  WeightedGraph(Graph graph, std::vector<double> weights);
  /// Pairs are sorted alongside their weights.
  static WeightedGraph from_edges(std::size_t n, std::vector<std::pair<Edge, double>> edges);
  static WeightedGraph unit(Graph graph);

  const Graph& graph() const noexcept { return graph_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::optional<double> weight(Edge e) const;
  double weight_at(std::size_t index) const { return weights_.at(index); }
  double min_weight() const;
  double max_weight() const;

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  Graph graph_;
  std::vector<double> weights_;
};

/// A set of edges meant to be pairwise disjoint. Construction normalizes
/// (sorts, drops duplicates) but does not validate; use is_matching().
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::vector<Edge> edges);

  std::span<const Edge> edges() const noexcept { return edges_; }
  std::size_t size() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return edges_.empty(); }
  bool contains(Edge e) const;

  auto begin() const noexcept { return edges_.begin(); }
  auto end() const noexcept { return edges_.end(); }

  /// mate[v] = partner of v, or kNoVertex. Sized to n.
  std::vector<Vertex> mates(std::size_t n) const;

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  std::vector<Edge> edges_;
};

std::vector<bool> covered_vertices(const Matching& m, std::size_t n);

bool is_matching(const Graph& g, const Matching& m);
bool is_maximal(const Graph& g, const Matching& m);

/// |M △ M'|.
std::size_t hamming(const Matching& a, const Matching& b);
/// Sum of w(e) over M △ M'. Throws NotFoundError if some edge has no weight in w.
double weighted_hamming(const Matching& a, const Matching& b, const WeightedGraph& w);
std::vector<Edge> symmetric_difference(const Matching& a, const Matching& b);

double matching_weight(const Matching& m, const WeightedGraph& w);

/// Stable 64-bit digest of (n, edges[, weights]); hex-encoded.
std::string graph_digest(const Graph& g);
std::string graph_digest(const WeightedGraph& g);

}  // namespace sensmatch
