#include "sensmatch/lca.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "sensmatch/errors.hpp"

namespace sensmatch {

std::vector<std::pair<Vertex, Vertex>> ForestDecomposition::edges(std::uint32_t forest) const {
  std::vector<std::pair<Vertex, Vertex>> out;
  const auto& p = parent.at(forest);
  for (Vertex u = 0; u < p.size(); ++u) {
    if (p[u] != kNoVertex) out.emplace_back(u, p[u]);
  }
  return out;
}

ForestDecomposition form_forests(const Graph& g, std::uint32_t delta) {
  ForestDecomposition f;
  f.num_vertices = g.num_vertices();
  f.delta = delta;
  f.parent.assign(delta, std::vector<Vertex>(g.num_vertices(), kNoVertex));
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    auto nbrs = g.neighbors(u);
    if (nbrs.size() > delta) {
      throw std::invalid_argument("vertex " + std::to_string(u) + " has degree " + std::to_string(nbrs.size()) +
                                  " > delta=" + std::to_string(delta));
    }
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (nbrs[i] > u) f.parent[i][u] = nbrs[i];
    }
  }
  return f;
}

std::uint32_t reduction_rounds(std::size_t n) {
  std::uint64_t bound = n;
  std::uint32_t rounds = 0;
  while (bound > 6) {
    bound = 2 * static_cast<std::uint64_t>(std::bit_width(bound - 1));
    ++rounds;
  }
  return rounds;
}

Coloring::Coloring(std::size_t n, std::uint32_t delta, std::vector<std::uint8_t> colors, std::uint32_t rounds)
    : n_(n), delta_(delta), rounds_(rounds), colors_(std::move(colors)) {
  if (colors_.size() != n_ * delta_) throw std::invalid_argument("coloring size does not match n * delta");
}

std::span<const std::uint8_t> Coloring::tuple(Vertex v) const {
  if (v >= n_) throw NotFoundError("vertex " + std::to_string(v) + " not colored");
  return {colors_.data() + static_cast<std::size_t>(v) * delta_, delta_};
}

Coloring color_forests(const ForestDecomposition& f) {
  const std::size_t n = f.num_vertices;
  const std::uint32_t rounds = reduction_rounds(n);
  std::vector<std::uint8_t> colors(n * f.delta, 0);
  std::vector<std::uint64_t> phi(n), next(n);
  for (std::uint32_t i = 0; i < f.delta; ++i) {
    const auto& parent = f.parent[i];
    for (Vertex u = 0; u < n; ++u) phi[u] = u;
    for (std::uint32_t r = 0; r < rounds; ++r) {
      for (Vertex u = 0; u < n; ++u) {
        next[u] = parent[u] == kNoVertex ? (phi[u] & 1) : cv_step(phi[u], phi[parent[u]]);
      }
      phi.swap(next);
    }
    for (Vertex u = 0; u < n; ++u) colors[static_cast<std::size_t>(u) * f.delta + i] = static_cast<std::uint8_t>(phi[u]);
  }
  return Coloring(n, f.delta, std::move(colors), rounds);
}

namespace {

std::uint32_t port_of(std::span<const Vertex> nbrs, Vertex target) {
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), target);
  return static_cast<std::uint32_t>(it - nbrs.begin());
}

EdgeKey make_key(Vertex x, Vertex y, std::span<const std::uint8_t> cx, std::span<const std::uint8_t> cy,
                 std::span<const Vertex> nx, std::span<const Vertex> ny) {
  if (std::lexicographical_compare(cy.begin(), cy.end(), cx.begin(), cx.end())) {
    std::swap(x, y);
    std::swap(cx, cy);
    std::swap(nx, ny);
  }
  return EdgeKey{{cx.begin(), cx.end()}, {cy.begin(), cy.end()}, port_of(nx, y), port_of(ny, x)};
}

}  // namespace

Matching coloring_to_mm(const Graph& g, const Coloring& coloring) {
  if (coloring.num_vertices() != g.num_vertices()) throw std::invalid_argument("coloring does not match graph");
  struct Keyed {
    EdgeKey key;
    Edge edge;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(g.num_edges());
  for (const Edge& e : g.edges()) {
    auto cu = coloring.tuple(e.u);
    auto cv = coloring.tuple(e.v);
    if (std::equal(cu.begin(), cu.end(), cv.begin(), cv.end())) {
      throw std::invalid_argument("coloring is not proper at edge " + to_string(e));
    }
    keyed.push_back({make_key(e.u, e.v, cu, cv, g.neighbors(e.u), g.neighbors(e.v)), e});
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    return a.key != b.key ? a.key < b.key : a.edge < b.edge;
  });
  std::vector<bool> used(g.num_vertices(), false);
  std::vector<Edge> chosen;
  for (const Keyed& k : keyed) {
    if (used[k.edge.u] || used[k.edge.v]) continue;
    used[k.edge.u] = used[k.edge.v] = true;
    chosen.push_back(k.edge);
  }
  return Matching(std::move(chosen));
}

Matching deterministic_mm(const Graph& g, std::uint32_t delta) {
  return coloring_to_mm(g, color_forests(form_forests(g, delta)));
}

Matching deterministic_mm(const Graph& g) {
  return deterministic_mm(g, static_cast<std::uint32_t>(g.max_degree()));
}

Vertex ProbeOracle::probe(Vertex v, std::size_t i) {
  ++probes_;
  auto nbrs = g_->neighbors(v);
  return i < nbrs.size() ? nbrs[i] : kNoVertex;
}

namespace {

// Query-local state: neighbor lists, colors and memberships read so far.
class LocalView {
 public:
  LocalView(ProbeOracle& oracle, std::uint32_t delta)
      : oracle_(oracle), delta_(delta), rounds_(reduction_rounds(oracle.num_vertices())) {}

  const std::vector<Vertex>& neighbors(Vertex v) {
    auto it = lists_.find(v);
    if (it != lists_.end()) return it->second;
    if (v >= oracle_.num_vertices()) throw NotFoundError("vertex " + std::to_string(v) + " not in graph");
    std::vector<Vertex> list;
    for (std::size_t i = 0; i <= delta_; ++i) {
      const Vertex w = oracle_.probe(v, i);
      if (w == kNoVertex) break;
      if (i == delta_) {
        throw std::invalid_argument("vertex " + std::to_string(v) + " has degree > delta=" + std::to_string(delta_));
      }
      list.push_back(w);
    }
    return lists_.emplace(v, std::move(list)).first->second;
  }

  const std::vector<std::uint8_t>& colors(Vertex v) {
    auto it = colors_.find(v);
    if (it != colors_.end()) return it->second;
    std::vector<std::uint8_t> tuple(delta_);
    for (std::uint32_t i = 0; i < delta_; ++i) tuple[i] = forest_color(v, i);
    return colors_.emplace(v, std::move(tuple)).first->second;
  }

  bool in_matching(Edge e) {
    auto it = memo_.find(e);
    if (it != memo_.end()) return it->second;
    const EdgeKey key = key_of(e);
    std::vector<std::pair<EdgeKey, Edge>> lower;
    for (Vertex x : {e.u, e.v}) {
      for (Vertex z : neighbors(x)) {
        const Edge f = Edge::of(x, z);
        if (f == e) continue;
        EdgeKey fk = key_of(f);
        if (fk < key) lower.emplace_back(std::move(fk), f);
      }
    }
    std::sort(lower.begin(), lower.end());
    bool in = true;
    for (const auto& [fk, f] : lower) {
      if (in_matching(f)) {
        in = false;
        break;
      }
    }
    memo_.emplace(e, in);
    return in;
  }

  std::vector<Vertex> probed() const {
    std::vector<Vertex> out;
    out.reserve(lists_.size());
    for (const auto& [v, list] : lists_) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  EdgeKey key_of(Edge e) {
    return make_key(e.u, e.v, colors(e.u), colors(e.v), neighbors(e.u), neighbors(e.v));
  }

  // Color of v in forest i after all reduction rounds. Needs the ancestors of
  // v up to depth rounds_; only the first rounds_ chain vertices are probed.
  std::uint8_t forest_color(Vertex v, std::uint32_t forest) {
    std::vector<std::uint64_t> phi{v};
    std::vector<bool> has_parent;
    Vertex cur = v;
    while (phi.size() <= rounds_) {
      const auto& nbrs = neighbors(cur);
      const bool up = forest < nbrs.size() && nbrs[forest] > cur;
      has_parent.push_back(up);
      if (!up) break;
      cur = nbrs[forest];
      phi.push_back(cur);
    }
    // Round r only needs chain positions j <= rounds_ - r.
    for (std::uint32_t r = 1; r <= rounds_; ++r) {
      const std::size_t limit = std::min(phi.size(), static_cast<std::size_t>(rounds_ - r + 1));
      for (std::size_t j = 0; j < limit; ++j) {
        phi[j] = has_parent[j] ? cv_step(phi[j], phi[j + 1]) : (phi[j] & 1);
      }
    }
    return static_cast<std::uint8_t>(phi[0]);
  }

  ProbeOracle& oracle_;
  std::uint32_t delta_;
  std::uint32_t rounds_;
  std::unordered_map<Vertex, std::vector<Vertex>> lists_;
  std::unordered_map<Vertex, std::vector<std::uint8_t>> colors_;
  std::unordered_map<Edge, bool, EdgeHash> memo_;
};

}  // namespace

QueryResult mm_query(ProbeOracle& oracle, Edge e, std::uint32_t delta) {
  const std::uint64_t before = oracle.probes();
  LocalView view(oracle, delta);
  const auto& nbrs = view.neighbors(e.u);
  if (!std::binary_search(nbrs.begin(), nbrs.end(), e.v)) {
    throw NotFoundError("edge " + to_string(e) + " not in graph");
  }
  QueryResult out;
  out.in_matching = view.in_matching(e);
  out.probes = oracle.probes() - before;
  out.probed = view.probed();
  return out;
}

}  // namespace sensmatch
