#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "sensmatch/graph.hpp"
#include "sensmatch/tape.hpp"

namespace sensmatch {

/// A strict total order on edges, given by a 64-bit rank per edge with ties
/// broken lexicographically. Restricting to a subset of edges preserves the
/// relative order of the survivors.
class EdgeOrder {
 public:
  /// Ranks drawn from the tape under `scope`; covers every possible edge.
  static EdgeOrder from_tape(const RandomTape& tape, const InvocationPath& scope);
  /// Explicit order: edges[0] first. Edges not listed have no rank.
  static EdgeOrder from_sequence(std::span<const Edge> edges);

  std::optional<std::uint64_t> rank(Edge e) const;
  /// Throws std::invalid_argument if either edge has no rank.
  bool precedes(Edge a, Edge b) const;

 private:
  EdgeOrder() = default;

  std::optional<RandomTape> tape_;
  InvocationPath scope_;
  std::unordered_map<Edge, std::uint64_t, EdgeHash> explicit_;
};

/// Scope of the edge ranks used by the stand-alone randomized greedy (and by
/// the initial matching of the approximation driver).
inline InvocationPath greedy_scope() { return InvocationPath{}.child(Frame::kInitialGreedy, 0); }

/// Randomized greedy: greedy_matching under the tape's ranks at greedy_scope().
Matching randomized_greedy(const Graph& g, const RandomTape& tape);

/// Edges of g sorted by `order`. Throws std::invalid_argument if some edge of
/// g has no rank.
std::vector<Edge> edges_in_order(const Graph& g, const EdgeOrder& order);

/// Greedy maximal matching: scan edges in order, keep each edge whose
/// endpoints are both still free.
Matching greedy_matching(const Graph& g, const EdgeOrder& order);

/// Same scan over a pre-sorted edge sequence on vertex ids [0, n).
Matching greedy_over_sequence(std::size_t n, std::span<const Edge> sorted_edges);

/// Edges whose state may change when vertex v is deleted: the fixed point of
///   S_0 = {e*} if e* in M else {},  e* = min-rank edge at v,
///   S_i = {e in M : S_{i-1} meets I(e)} u {e not in M : I(e) n M within S_0..S_{i-1}},
/// where I(e) = neighbors of e with smaller rank and M = greedy_matching(g, order).
/// Each edge enters once; the other edges at v are deleted with v and never
/// enter. Throws NotFoundError if v is not a vertex of g.
std::vector<Edge> change_set(const Graph& g, Vertex v, const EdgeOrder& order);

/// The same recursion with S_0 seeded by a deleted edge.
std::vector<Edge> change_set_for_edge(const Graph& g, Edge deleted, const EdgeOrder& order);

/// Low-level greedy over an arbitrary pair list on node ids [0, num_nodes).
struct RankedPair {
  std::uint64_t rank;
  std::uint64_t tiebreak;
  std::uint32_t a;
  std::uint32_t b;
};

/// Sorts `pairs` by (rank, tiebreak, a, b) and returns the selected subset in
/// scan order. `scratch` must cover every node id and be all-zero; it is
/// all-zero again on return.
std::vector<RankedPair> greedy_select(std::vector<RankedPair>& pairs, std::vector<std::uint8_t>& scratch);

}  // namespace sensmatch
