#include "sensmatch/layered.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sensmatch/greedy.hpp"

namespace sensmatch {

Activation draw_activation(const Graph& g, const Matching& m, std::uint32_t path_param,
                           const RandomTape& tape, const InvocationPath& scope) {
  if (path_param < 1) throw std::invalid_argument("path parameter l must be >= 1");
  Activation act;
  act.path_param = path_param;
  const auto covered = covered_vertices(m, g.num_vertices());
  act.free_side.assign(g.num_vertices(), Activation::kInactive);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (!covered[v]) act.free_side[v] = tape.free_vertex_side(v, path_param, scope);
  }
  act.slots.reserve(m.size());
  for (const Edge& e : m) act.slots.push_back(tape.matched_edge_slot(e, path_param, scope));
  return act;
}

LayeredGraph::LayeredGraph(const Graph& g, const Matching& m, const Activation& act)
    : path_param_(act.path_param) {
  if (!is_matching(g, m)) throw std::invalid_argument("M is not a matching of G");
  if (path_param_ < 1) throw std::invalid_argument("path parameter l must be >= 1");
  const std::size_t n = g.num_vertices();
  if (act.free_side.size() != n || act.slots.size() != m.size()) {
    throw std::invalid_argument("activation does not match the graph and matching");
  }
  const std::uint32_t top = path_param_ + 1;
  const auto covered = covered_vertices(m, n);
  for (Vertex v = 0; v < n; ++v) {
    const std::uint32_t side = act.free_side[v];
    const bool ok = covered[v] ? side == Activation::kInactive : (side == 0 || side == top);
    if (!ok) throw std::invalid_argument("bad boundary activation for vertex " + std::to_string(v));
  }

  std::vector<LayerNode> nodes;
  for (Vertex v = 0; v < n; ++v) {
    if (act.free_side[v] != Activation::kInactive) nodes.push_back({act.free_side[v], v, kNoVertex});
  }
  for (std::size_t k = 0; k < m.size(); ++k) {
    const MatchedSlot& s = act.slots[k];
    const Edge e = m.edges()[k];
    if (Edge::of(s.upper, s.lower) != e || s.layer < 1 || s.layer > path_param_) {
      throw std::invalid_argument("bad slot for matched edge " + to_string(e));
    }
    nodes.push_back({s.layer, s.upper, s.lower});
  }
  std::sort(nodes.begin(), nodes.end());
  nodes_ = std::move(nodes);

  layers_.assign(num_layers(), {});
  // Each vertex is the entry (upper) vertex of at most one node.
  std::vector<NodeId> entry(n, static_cast<NodeId>(-1));
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    layers_[nodes_[id].layer].push_back(id);
    entry[nodes_[id].upper] = id;
  }

  down_offsets_.assign(nodes_.size() + 1, 0);
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    const LayerNode& x = nodes_[id];
    down_offsets_[id] = down_targets_.size();
    if (x.layer == 0) continue;
    const Vertex exit = x.is_boundary() ? x.upper : x.lower;
    for (Vertex y : g.neighbors(exit)) {
      const NodeId target = entry[y];
      if (target != static_cast<NodeId>(-1) && nodes_[target].layer + 1 == x.layer) {
        down_targets_.push_back(target);
      }
    }
    std::sort(down_targets_.begin() + static_cast<std::ptrdiff_t>(down_offsets_[id]), down_targets_.end());
  }
  down_offsets_[nodes_.size()] = down_targets_.size();
}

std::span<const NodeId> LayeredGraph::layer(std::uint32_t i) const {
  if (i >= layers_.size()) throw std::out_of_range("layer index out of range");
  return layers_[i];
}

std::span<const NodeId> LayeredGraph::down(NodeId id) const {
  if (id >= nodes_.size()) throw std::out_of_range("node id out of range");
  return {down_targets_.data() + down_offsets_[id], down_offsets_[id + 1] - down_offsets_[id]};
}

std::vector<LayerNode> LayeredGraph::active_set() const { return nodes_; }

std::string LayeredGraph::debug_dump() const {
  std::ostringstream out;
  auto write = [&](const LayerNode& x) {
    out << x.layer << ' ' << x.upper << ' ';
    if (x.is_boundary()) {
      out << '-';
    } else {
      out << x.lower;
    }
  };
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    for (NodeId to : down(id)) {
      write(nodes_[id]);
      out << " -> ";
      write(nodes_[to]);
      out << '\n';
    }
  }
  return out.str();
}

LayeredGraph build_layered(const Graph& g, const Matching& m, std::uint32_t path_param,
                           const RandomTape& tape, const InvocationPath& scope) {
  return LayeredGraph(g, m, draw_activation(g, m, path_param, tape, scope));
}

// ---------------------------------------------------------------------------
// FindPaths

std::uint64_t loop_count(double delta) {
  if (!(delta > 0.0) || delta > 1.0) throw std::invalid_argument("delta must be in (0, 1]");
  const double inv = 1.0 / delta;
  if (inv >= 1.8e19) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(std::ceil(inv - 1e-9));
}

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

struct Search {
  const LayeredGraph& h;
  TagFunction& tags;
  const RandomTape& tape;
  FindPathsStats* stats;
  std::vector<std::uint8_t> scratch;
  /// Partner of each node in the current greedy matching of its level.
  std::vector<NodeId> partner;

  bool tracing() const { return stats && stats->call_trace; }

  // One RandomizedGreedy call between `from` (layer i) and the untagged nodes
  // of layer i-1. Returns the matched pairs (from-node, to-node).
  std::vector<std::pair<NodeId, NodeId>> greedy(std::span<const NodeId> from, const InvocationPath& scope) {
    if (stats && stats->call_trace) stats->call_trace->push_back(scope.digest());
    std::vector<RankedPair> pairs;
    for (NodeId a : from) {
      if (!tags.untagged(a)) continue;
      const std::uint64_t ka = h.node(a).key();
      for (NodeId b : h.down(a)) {
        if (!tags.untagged(b)) continue;
        const std::uint64_t kb = h.node(b).key();
        pairs.push_back({tape.bits(RandomTape::Kind::kLayeredPair, scope, {ka, kb}), combine64(ka, kb), a, b});
      }
    }
    if (pairs.empty()) return {};
    if (stats) ++stats->executed_greedy_calls;
    std::vector<std::pair<NodeId, NodeId>> out;
    for (const RankedPair& p : greedy_select(pairs, scratch)) out.emplace_back(p.a, p.b);
    std::sort(out.begin(), out.end());
    return out;
  }

  void run(std::span<const NodeId> sources, std::uint32_t i, double delta, const InvocationPath& scope) {
    auto matched = greedy(sources, scope.child(Frame::kGreedyCall, 0));

    if (i == 1) {
      for (auto [a, b] : matched) {
        tags.point(a, b);
        tags.mark_used(b);
      }
      for (NodeId a : sources) {
        if (tags.untagged(a)) tags.mark_dead_end(a);
      }
      return;
    }

    const std::uint64_t loops = loop_count(delta);
    const double inner_delta = delta * delta;
    for (std::uint64_t j = 1; j <= loops; ++j) {
      if (matched.empty() && !tracing()) break;
      std::vector<NodeId> next;
      next.reserve(matched.size());
      for (auto [a, b] : matched) {
        partner[b] = a;
        next.push_back(b);
      }
      std::sort(next.begin(), next.end());
      run(next, i - 1, inner_delta, scope.child(Frame::kFindPathsIter, j));
      for (NodeId b : next) {
        if (!tags.dead_end(b)) tags.point(partner[b], b);
      }
      matched = greedy(sources, scope.child(Frame::kGreedyCall, j));
    }
    for (NodeId a : sources) {
      if (tags.untagged(a)) tags.mark_dead_end(a);
    }
  }
};

}  // namespace

std::uint64_t nominal_greedy_calls(std::uint32_t layer, double delta) {
  if (layer < 1) throw std::invalid_argument("layer must be >= 1");
  if (layer == 1) return 1;
  const double next = delta * delta;
  const std::uint64_t inner =
      next > 0.0 ? nominal_greedy_calls(layer - 1, next) : std::numeric_limits<std::uint64_t>::max();
  return sat_add(1, sat_mul(loop_count(delta), sat_add(inner, 1)));
}

void find_paths(const LayeredGraph& h, std::span<const NodeId> sources, std::uint32_t layer, double delta,
                TagFunction& tags, const RandomTape& tape, const InvocationPath& scope, FindPathsStats* stats) {
  if (!(delta > 0.0) || delta > 1.0) throw std::invalid_argument("delta must be in (0, 1]");
  if (layer < 1 || layer >= h.num_layers()) throw std::invalid_argument("layer out of range");
  if (tags.size() != h.num_nodes()) throw std::invalid_argument("tag function does not match H");
  for (NodeId s : sources) {
    if (s >= h.num_nodes() || h.node(s).layer != layer) {
      throw std::invalid_argument("source node is not in layer " + std::to_string(layer));
    }
  }
  if (stats) stats->nominal_greedy_calls = sat_add(stats->nominal_greedy_calls, nominal_greedy_calls(layer, delta));

  Search search{h, tags, tape, stats, std::vector<std::uint8_t>(h.num_nodes(), 0),
                std::vector<NodeId>(h.num_nodes(), 0)};
  search.run(sources, layer, delta, scope);
}

std::vector<Edge> AugmentingPath::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) out.push_back(Edge::of(vertices[i], vertices[i + 1]));
  return out;
}

std::vector<AugmentingPath> decode_paths(const LayeredGraph& h, const TagFunction& tags) {
  std::vector<AugmentingPath> paths;
  for (NodeId s : h.layer(h.num_layers() - 1)) {
    if (!tags.is_pointer(s)) continue;
    AugmentingPath path;
    path.vertices.push_back(h.node(s).upper);
    NodeId cur = s;
    while (h.node(cur).layer > 0) {
      if (!tags.is_pointer(cur)) throw std::logic_error("tag chain breaks before layer 0");
      cur = tags.pointer(cur);
      const LayerNode& x = h.node(cur);
      path.vertices.push_back(x.upper);
      if (!x.is_boundary()) path.vertices.push_back(x.lower);
    }
    paths.push_back(std::move(path));
  }
  return paths;
}

std::vector<AugmentingPath> augmenting_paths(const Graph& g, const Matching& m, std::uint32_t path_param,
                                             double delta, const RandomTape& tape, const InvocationPath& scope,
                                             FindPathsStats* stats) {
  const LayeredGraph h = build_layered(g, m, path_param, tape, scope);
  TagFunction tags(h.num_nodes());
  const std::uint32_t top = h.num_layers() - 1;
  find_paths(h, h.layer(top), top, delta, tags, tape, scope, stats);
  return decode_paths(h, tags);
}

Matching apply_augmentations(const Matching& m, std::span<const AugmentingPath> paths) {
  if (paths.empty()) return m;
  Vertex max_id = 0;
  for (const Edge& e : m) max_id = std::max(max_id, e.v);
  for (const auto& p : paths) {
    for (Vertex v : p.vertices) max_id = std::max(max_id, v);
  }
  const auto mate = m.mates(static_cast<std::size_t>(max_id) + 1);
  std::vector<bool> seen(static_cast<std::size_t>(max_id) + 1, false);

  std::vector<Edge> flip;
  for (const auto& p : paths) {
    const auto& vs = p.vertices;
    if (vs.size() < 4 || vs.size() % 2 != 0) {
      throw std::invalid_argument("augmenting path must have an odd length >= 3");
    }
    if (mate[vs.front()] != kNoVertex || mate[vs.back()] != kNoVertex) {
      throw std::invalid_argument("augmenting path endpoints must be free");
    }
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (seen[vs[i]]) throw std::invalid_argument("augmenting paths overlap at vertex " + std::to_string(vs[i]));
      seen[vs[i]] = true;
      if (i + 1 == vs.size()) break;
      const bool should_match = i % 2 == 1;
      if ((mate[vs[i]] == vs[i + 1]) != should_match) {
        throw std::invalid_argument("path does not alternate at " + std::to_string(vs[i]) + "-" +
                                    std::to_string(vs[i + 1]));
      }
    }
    for (const Edge& e : p.edges()) flip.push_back(e);
  }
  std::sort(flip.begin(), flip.end());
  std::vector<Edge> out;
  std::set_symmetric_difference(m.begin(), m.end(), flip.begin(), flip.end(), std::back_inserter(out));
  return Matching(std::move(out));
}

}  // namespace sensmatch
