#pragma once

// Layered graph for finding length-(2l+1) augmenting paths in batches.
//
// Layers 0..l+1. Boundary layers 0 and l+1 hold copies of the free vertices
// (each free vertex is active on exactly one side); the middle layers 1..l
// hold one active oriented copy (upper, lower) of every matched edge.
// Edges of the layered graph (all oriented downward):
//   s in layer l+1          -> (u, v) in layer l      iff s ~ u
//   (u, v) in layer j+1     -> (u', v') in layer j    iff v ~ u'
//   (u, v) in layer 1       -> t in layer 0           iff v ~ t
// A path s, (u_l, v_l), ..., (u_1, v_1), t decodes to the augmenting path
// s, u_l, v_l, ..., u_1, v_1, t in G.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sensmatch/graph.hpp"
#include "sensmatch/tape.hpp"

namespace sensmatch {

using NodeId = std::uint32_t;

struct LayerNode {
  std::uint32_t layer = 0;
  Vertex upper = kNoVertex;  ///< the vertex itself for boundary nodes
  Vertex lower = kNoVertex;  ///< kNoVertex for boundary nodes

  bool is_boundary() const noexcept { return lower == kNoVertex; }
  /// Structural identity, independent of graph content and node numbering.
  std::uint64_t key() const noexcept {
    return combine64(combine64(mix64(layer), upper), lower);
  }

  auto operator<=>(const LayerNode&) const = default;
};

/// Which copies are active.
struct Activation {
  std::uint32_t path_param = 1;
  /// Per vertex: 0 or l+1 for free vertices; kInactive for covered ones.
  std::vector<std::uint32_t> free_side;
  /// One slot per matching edge, in the matching's edge order.
  std::vector<MatchedSlot> slots;

  static constexpr std::uint32_t kInactive = static_cast<std::uint32_t>(-1);
};

/// Draws the activation from the tape (free_vertex_side, matched_edge_slot).
Activation draw_activation(const Graph& g, const Matching& m, std::uint32_t path_param,
                           const RandomTape& tape, const InvocationPath& scope);

class LayeredGraph {
 public:
  /// Throws std::invalid_argument if m is not a matching of g, l < 1, or the
  /// activation does not fit (g, m, l).
  LayeredGraph(const Graph& g, const Matching& m, const Activation& activation);

  std::uint32_t path_param() const noexcept { return path_param_; }
  std::uint32_t num_layers() const noexcept { return path_param_ + 2; }

  std::size_t num_nodes() const noexcept { return nodes_.size(); }
  const LayerNode& node(NodeId id) const { return nodes_.at(id); }
  std::span<const LayerNode> nodes() const noexcept { return nodes_; }
  std::span<const NodeId> layer(std::uint32_t i) const;
  /// Neighbors in the next lower layer.
  std::span<const NodeId> down(NodeId id) const;
  std::size_t num_edges() const noexcept { return down_targets_.size(); }

  /// Active nodes, sorted, as structural values.
  std::vector<LayerNode> active_set() const;

  /// One "layer upper lower -> layer upper lower" line per edge.
  std::string debug_dump() const;

 private:
  std::uint32_t path_param_ = 1;
  std::vector<LayerNode> nodes_;
  std::vector<std::vector<NodeId>> layers_;
  std::vector<std::size_t> down_offsets_;
  std::vector<NodeId> down_targets_;
};

LayeredGraph build_layered(const Graph& g, const Matching& m, std::uint32_t path_param,
                           const RandomTape& tape, const InvocationPath& scope);

/// Per-node state of the path search.
class TagFunction {
 public:
  static constexpr std::int64_t kUntagged = -1;
  static constexpr std::int64_t kDeadEnd = -2;
  /// Layer-0 node that already terminates a found path.
  static constexpr std::int64_t kUsed = -3;

  explicit TagFunction(std::size_t num_nodes) : tags_(num_nodes, kUntagged) {}

  std::int64_t operator[](NodeId id) const { return tags_[id]; }
  bool untagged(NodeId id) const { return tags_[id] == kUntagged; }
  bool dead_end(NodeId id) const { return tags_[id] == kDeadEnd; }
  bool is_pointer(NodeId id) const { return tags_[id] >= 0; }
  NodeId pointer(NodeId id) const { return static_cast<NodeId>(tags_[id]); }

  void point(NodeId from, NodeId to) { tags_[from] = to; }
  void mark_dead_end(NodeId id) { tags_[id] = kDeadEnd; }
  void mark_used(NodeId id) { tags_[id] = kUsed; }

  std::size_t size() const noexcept { return tags_.size(); }

 private:
  std::vector<std::int64_t> tags_;
};

struct FindPathsStats {
  /// Greedy calls the search makes by construction: a function of (l, delta)
  /// only, saturating at UINT64_MAX.
  std::uint64_t nominal_greedy_calls = 0;
  /// Greedy calls that had at least one candidate pair.
  std::uint64_t executed_greedy_calls = 0;
  /// When set, every greedy call is executed (no skipping of provably empty
  /// iterations) and its scope digest is appended here.
  std::vector<std::uint64_t>* call_trace = nullptr;
};

/// Loop count of one search level: ceil(1/delta), tolerant to rounding.
std::uint64_t loop_count(double delta);

/// Nominal number of greedy calls of a search started at layer i with
/// parameter delta. Saturates at UINT64_MAX.
std::uint64_t nominal_greedy_calls(std::uint32_t layer, double delta);

/// Searches vertex-disjoint i-paths from S (nodes of layer i) down to layer 0,
/// recording them in t. Afterwards every node of S is a pointer or a dead end.
/// Throws std::invalid_argument unless 0 < delta <= 1, i >= 1, S within layer i.
void find_paths(const LayeredGraph& h, std::span<const NodeId> sources, std::uint32_t layer,
                double delta, TagFunction& tags, const RandomTape& tape, const InvocationPath& scope,
                FindPathsStats* stats = nullptr);

struct AugmentingPath {
  std::vector<Vertex> vertices;  ///< 2l+2 vertices, free at both ends

  std::size_t length() const noexcept { return vertices.empty() ? 0 : vertices.size() - 1; }
  std::vector<Edge> edges() const;

  friend bool operator==(const AugmentingPath&, const AugmentingPath&) = default;
};

/// Follows pointers from every tagged top-layer node down to layer 0.
std::vector<AugmentingPath> decode_paths(const LayeredGraph& h, const TagFunction& tags);

/// Builds the layered graph, runs the search from the top layer, and decodes.
std::vector<AugmentingPath> augmenting_paths(const Graph& g, const Matching& m, std::uint32_t path_param,
                                             double delta, const RandomTape& tape,
                                             const InvocationPath& scope, FindPathsStats* stats = nullptr);

/// M xor (edges of all paths). Throws std::invalid_argument if a path is
/// shorter than 3 edges, not alternating with respect to m, not free at both
/// ends, or if two paths share a vertex.
Matching apply_augmentations(const Matching& m, std::span<const AugmentingPath> paths);

}  // namespace sensmatch
