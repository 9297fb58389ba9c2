#pragma once

// Edge-list text format:
//
//   # comment lines start with '#'; blank lines are ignored
//   n m          header: vertex count, edge count
//   u v          one line per edge, 0-based ids (unweighted)
//   u v w        weighted variant, w > 0
//
// Errors are reported as ParseError naming the offending line.

#include <iosfwd>
#include <string>
#include <string_view>

#include "sensmatch/graph.hpp"

namespace sensmatch {

Graph load_graph(std::string_view text);
WeightedGraph load_weighted(std::string_view text);
/// Accepts either form; an unweighted document gets unit weights.
/// `weighted` (if non-null) reports which form was read.
WeightedGraph load_edge_list(std::string_view text, bool* weighted = nullptr);

std::string read_file(const std::string& path);

void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list(std::ostream& out, const WeightedGraph& g);

/// Shortest round-trip decimal form of a double.
std::string format_real(double x);

}  // namespace sensmatch
