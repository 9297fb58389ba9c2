#include "sensmatch/perturbation.hpp"

#include "sensmatch/errors.hpp"

namespace sensmatch {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Indices of surviving edges.
std::vector<std::size_t> surviving(const Graph& g, const Perturbation& p) {
  validate_perturbation(g, p);
  std::vector<std::size_t> keep;
  keep.reserve(g.num_edges());
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edges()[i];
    const bool removed = std::visit(Overloaded{
                                        [&](const DeleteEdge& d) { return e == d.edge; },
                                        [&](const DeleteVertex& d) { return e.touches(d.vertex); },
                                    },
                                    p);
    if (!removed) keep.push_back(i);
  }
  return keep;
}

}  // namespace

std::string describe(const Perturbation& p) {
  return std::visit(Overloaded{
                        [](const DeleteEdge& d) { return "edge:" + to_string(d.edge); },
                        [](const DeleteVertex& d) { return "vertex:" + std::to_string(d.vertex); },
                    },
                    p);
}

void validate_perturbation(const Graph& g, const Perturbation& p) {
  std::visit(Overloaded{
                 [&](const DeleteEdge& d) {
                   if (!g.has_edge(d.edge)) throw NotFoundError("edge " + to_string(d.edge) + " not in graph");
                 },
                 [&](const DeleteVertex& d) {
                   if (!g.has_vertex(d.vertex)) {
                     throw NotFoundError("vertex " + std::to_string(d.vertex) + " not in graph");
                   }
                 },
             },
             p);
}

Graph apply_perturbation(const Graph& g, const Perturbation& p) {
  std::vector<Edge> edges;
  for (std::size_t i : surviving(g, p)) edges.push_back(g.edges()[i]);
  return Graph(g.num_vertices(), std::move(edges));
}

WeightedGraph apply_perturbation(const WeightedGraph& g, const Perturbation& p) {
  std::vector<Edge> edges;
  std::vector<double> ws;
  for (std::size_t i : surviving(g.graph(), p)) {
    edges.push_back(g.graph().edges()[i]);
    ws.push_back(g.weight_at(i));
  }
  return WeightedGraph(Graph(g.graph().num_vertices(), std::move(edges)), std::move(ws));
}

std::vector<Perturbation> all_edge_deletions(const Graph& g) {
  std::vector<Perturbation> out;
  for (const Edge& e : g.edges()) out.emplace_back(DeleteEdge{e});
  return out;
}

std::vector<Perturbation> all_vertex_deletions(const Graph& g) {
  std::vector<Perturbation> out;
  for (Vertex v = 0; v < g.num_vertices(); ++v) out.emplace_back(DeleteVertex{v});
  return out;
}

}  // namespace sensmatch
