#include "sensmatch/greedy.hpp"

#include <algorithm>
#include <stdexcept>

#include "sensmatch/errors.hpp"

namespace sensmatch {

EdgeOrder EdgeOrder::from_tape(const RandomTape& tape, const InvocationPath& scope) {
  EdgeOrder order;
  order.tape_ = tape;
  order.scope_ = scope;
  return order;
}

EdgeOrder EdgeOrder::from_sequence(std::span<const Edge> edges) {
  EdgeOrder order;
  order.explicit_.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!order.explicit_.emplace(edges[i], i).second) {
      throw std::invalid_argument("edge " + to_string(edges[i]) + " listed twice in order");
    }
  }
  return order;
}

std::optional<std::uint64_t> EdgeOrder::rank(Edge e) const {
  if (tape_) return tape_->edge_rank_bits(e, scope_);
  auto it = explicit_.find(e);
  if (it == explicit_.end()) return std::nullopt;
  return it->second;
}

bool EdgeOrder::precedes(Edge a, Edge b) const {
  auto ra = rank(a);
  auto rb = rank(b);
  if (!ra || !rb) throw std::invalid_argument("edge order does not cover the compared edges");
  return *ra != *rb ? *ra < *rb : a < b;
}

namespace {

struct Ranked {
  std::uint64_t rank;
  Edge edge;
  std::size_t index;
};

std::vector<Ranked> ranked_edges(const Graph& g, const EdgeOrder& order) {
  std::vector<Ranked> out;
  out.reserve(g.num_edges());
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const Edge e = g.edges()[i];
    auto r = order.rank(e);
    if (!r) throw std::invalid_argument("edge order is missing edge " + to_string(e));
    out.push_back({*r, e, i});
  }
  std::sort(out.begin(), out.end(), [](const Ranked& a, const Ranked& b) {
    return a.rank != b.rank ? a.rank < b.rank : a.edge < b.edge;
  });
  return out;
}

}  // namespace

std::vector<Edge> edges_in_order(const Graph& g, const EdgeOrder& order) {
  std::vector<Edge> out;
  out.reserve(g.num_edges());
  for (const Ranked& r : ranked_edges(g, order)) out.push_back(r.edge);
  return out;
}

Matching greedy_over_sequence(std::size_t n, std::span<const Edge> sorted_edges) {
  std::vector<bool> used(n, false);
  std::vector<Edge> chosen;
  for (const Edge& e : sorted_edges) {
    if (used[e.u] || used[e.v]) continue;
    used[e.u] = used[e.v] = true;
    chosen.push_back(e);
  }
  return Matching(std::move(chosen));
}

Matching greedy_matching(const Graph& g, const EdgeOrder& order) {
  return greedy_over_sequence(g.num_vertices(), edges_in_order(g, order));
}

Matching randomized_greedy(const Graph& g, const RandomTape& tape) {
  return greedy_matching(g, EdgeOrder::from_tape(tape, greedy_scope()));
}

std::vector<RankedPair> greedy_select(std::vector<RankedPair>& pairs, std::vector<std::uint8_t>& scratch) {
  std::sort(pairs.begin(), pairs.end(), [](const RankedPair& x, const RankedPair& y) {
    if (x.rank != y.rank) return x.rank < y.rank;
    if (x.tiebreak != y.tiebreak) return x.tiebreak < y.tiebreak;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  std::vector<RankedPair> chosen;
  for (const RankedPair& p : pairs) {
    if (scratch[p.a] || scratch[p.b]) continue;
    scratch[p.a] = scratch[p.b] = 1;
    chosen.push_back(p);
  }
  for (const RankedPair& p : chosen) scratch[p.a] = scratch[p.b] = 0;
  return chosen;
}

namespace {

// Fixed point of the change-set recursion. `seed` is the edge whose removal
// starts the cascade; edges flagged in `excluded` are gone from the graph.
std::vector<Edge> change_set_from(const Graph& g, std::size_t seed, const std::vector<bool>& excluded,
                                  const EdgeOrder& order) {
  const std::size_t m = g.num_edges();
  const auto ranked = ranked_edges(g, order);
  std::vector<std::size_t> pos(m);
  for (std::size_t p = 0; p < m; ++p) pos[ranked[p].index] = p;

  std::vector<bool> in_matching(m, false);
  {
    std::vector<bool> used(g.num_vertices(), false);
    for (const Ranked& r : ranked) {
      if (used[r.edge.u] || used[r.edge.v]) continue;
      used[r.edge.u] = used[r.edge.v] = true;
      in_matching[r.index] = true;
    }
  }
  if (!in_matching[seed]) return {};

  // Incident edge indices per vertex.
  std::vector<std::vector<std::size_t>> incident(g.num_vertices());
  for (std::size_t i = 0; i < m; ++i) {
    incident[g.edges()[i].u].push_back(i);
    incident[g.edges()[i].v].push_back(i);
  }

  std::vector<bool> in_set(m, false);
  std::vector<bool> queued(m, false);
  in_set[seed] = true;
  std::vector<std::size_t> previous{seed};
  std::vector<std::size_t> result{seed};

  auto lower_matched_all_in_set = [&](std::size_t e) {
    const Edge edge = g.edges()[e];
    for (Vertex x : {edge.u, edge.v}) {
      for (std::size_t f : incident[x]) {
        if (f == e || excluded[f]) continue;
        if (pos[f] < pos[e] && in_matching[f] && !in_set[f]) return false;
      }
    }
    return true;
  };

  while (!previous.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t f : previous) {
      const Edge fe = g.edges()[f];
      for (Vertex x : {fe.u, fe.v}) {
        for (std::size_t e : incident[x]) {
          if (e == f || excluded[e] || in_set[e] || queued[e]) continue;
          bool enters = false;
          if (in_matching[e]) {
            enters = pos[f] < pos[e];
          } else {
            enters = lower_matched_all_in_set(e);
          }
          if (enters) {
            queued[e] = true;
            next.push_back(e);
          }
        }
      }
    }
    for (std::size_t e : next) {
      in_set[e] = true;
      queued[e] = false;
      result.push_back(e);
    }
    previous = std::move(next);
  }

  std::vector<Edge> out;
  out.reserve(result.size());
  for (std::size_t i : result) out.push_back(g.edges()[i]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Edge> change_set(const Graph& g, Vertex v, const EdgeOrder& order) {
  if (!g.has_vertex(v)) throw NotFoundError("vertex " + std::to_string(v) + " not in graph");
  auto nbrs = g.neighbors(v);
  if (nbrs.empty()) return {};

  std::optional<Edge> first;
  for (Vertex x : nbrs) {
    const Edge e = Edge::of(v, x);
    if (!first || order.precedes(e, *first)) first = e;
  }
  const std::size_t seed = *g.edge_index(*first);
  std::vector<bool> excluded(g.num_edges(), false);
  for (Vertex x : nbrs) excluded[*g.edge_index(Edge::of(v, x))] = true;
  excluded[seed] = false;
  return change_set_from(g, seed, excluded, order);
}

std::vector<Edge> change_set_for_edge(const Graph& g, Edge deleted, const EdgeOrder& order) {
  auto idx = g.edge_index(deleted);
  if (!idx) throw NotFoundError("edge " + to_string(deleted) + " not in graph");
  return change_set_from(g, *idx, std::vector<bool>(g.num_edges(), false), order);
}

}  // namespace sensmatch
