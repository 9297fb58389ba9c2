#pragma once

#include <string>
#include <variant>
#include <vector>

#include "sensmatch/graph.hpp"

namespace sensmatch {

struct DeleteEdge {
  Edge edge;
  friend bool operator==(const DeleteEdge&, const DeleteEdge&) = default;
};

struct DeleteVertex {
  Vertex vertex;
  friend bool operator==(const DeleteVertex&, const DeleteVertex&) = default;
};

using Perturbation = std::variant<DeleteEdge, DeleteVertex>;

std::string describe(const Perturbation& p);

/// Throws NotFoundError if the target is absent. A deleted vertex keeps its
/// id and becomes isolated; deleting an isolated vertex is valid and a no-op
/// on the edge set.
Graph apply_perturbation(const Graph& g, const Perturbation& p);
WeightedGraph apply_perturbation(const WeightedGraph& g, const Perturbation& p);

/// Throws NotFoundError if p does not name something in g.
void validate_perturbation(const Graph& g, const Perturbation& p);

std::vector<Perturbation> all_edge_deletions(const Graph& g);
std::vector<Perturbation> all_vertex_deletions(const Graph& g);

}  // namespace sensmatch
