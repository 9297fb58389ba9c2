#include "sensmatch/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "sensmatch/errors.hpp"

namespace sensmatch {
namespace {

struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;

    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
      if (i >= raw.size()) break;
      if (raw[i] == '#' && line.tokens.empty()) break;
      std::size_t j = i;
      while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r') ++j;
      line.tokens.push_back(raw.substr(i, j - i));
      i = j;
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
  }
  return lines;
}

std::uint64_t parse_count(std::string_view tok, std::size_t line) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "expected a non-negative integer, got '" + std::string(tok) + "'");
  }
  return value;
}

double parse_weight(std::string_view tok, std::size_t line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "expected a weight, got '" + std::string(tok) + "'");
  }
  if (!std::isfinite(value) || value <= 0.0) {
    throw ParseError(line, "weight must be positive, got '" + std::string(tok) + "'");
  }
  return value;
}

struct Parsed {
  std::size_t n = 0;
  std::vector<std::pair<Edge, double>> edges;
  bool weighted = false;
};

// arity: 2, 3, or 0 for "decide from the first edge line".
Parsed parse(std::string_view text, int arity) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(0, "missing header line 'n m'");
  const Line& header = lines.front();
  if (header.tokens.size() != 2) throw ParseError(header.number, "header must be 'n m'");
  const std::uint64_t n = parse_count(header.tokens[0], header.number);
  const std::uint64_t m = parse_count(header.tokens[1], header.number);
  if (n > std::numeric_limits<Vertex>::max()) throw ParseError(header.number, "vertex count too large");

  Parsed out;
  out.n = static_cast<std::size_t>(n);
  if (arity == 0) arity = lines.size() > 1 && lines[1].tokens.size() == 3 ? 3 : 2;
  out.weighted = arity == 3;

  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    if (line.tokens.size() != static_cast<std::size_t>(arity)) {
      throw ParseError(line.number, "expected " + std::string(arity == 3 ? "'u v w'" : "'u v'"));
    }
    const std::uint64_t u = parse_count(line.tokens[0], line.number);
    const std::uint64_t v = parse_count(line.tokens[1], line.number);
    if (u >= n || v >= n) throw ParseError(line.number, "vertex id >= n=" + std::to_string(n));
    if (u == v) throw ParseError(line.number, "self-loop at vertex " + std::to_string(u));
    const Edge e = Edge::of(static_cast<Vertex>(u), static_cast<Vertex>(v));
    const double w = arity == 3 ? parse_weight(line.tokens[2], line.number) : 1.0;
    out.edges.emplace_back(e, w);
  }
  if (out.edges.size() != m) {
    throw ParseError(lines.back().number, "header announces " + std::to_string(m) + " edges, found " +
                                              std::to_string(out.edges.size()));
  }

  // Duplicate detection reports the later line.
  std::vector<std::pair<Edge, std::size_t>> order;
  order.reserve(out.edges.size());
  for (std::size_t k = 0; k < out.edges.size(); ++k) order.emplace_back(out.edges[k].first, k);
  std::sort(order.begin(), order.end());
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (order[k].first == order[k - 1].first) {
      const std::size_t later = std::max(order[k].second, order[k - 1].second);
      throw ParseError(lines[later + 1].number, "duplicate edge " + to_string(order[k].first));
    }
  }
  return out;
}

}  // namespace

Graph load_graph(std::string_view text) {
  Parsed p = parse(text, 2);
  std::vector<Edge> edges;
  edges.reserve(p.edges.size());
  for (auto& [e, w] : p.edges) edges.push_back(e);
  return Graph(p.n, std::move(edges));
}

WeightedGraph load_weighted(std::string_view text) {
  Parsed p = parse(text, 3);
  return WeightedGraph::from_edges(p.n, std::move(p.edges));
}

WeightedGraph load_edge_list(std::string_view text, bool* weighted) {
  Parsed p = parse(text, 0);
  if (weighted) *weighted = p.weighted;
  return WeightedGraph::from_edges(p.n, std::move(p.edges));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_real(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw std::runtime_error("cannot format real");
  return std::string(buf, ptr);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_edge_list(std::ostream& out, const WeightedGraph& g) {
  out << g.graph().num_vertices() << ' ' << g.graph().num_edges() << '\n';
  for (std::size_t i = 0; i < g.graph().num_edges(); ++i) {
    const Edge& e = g.graph().edges()[i];
    out << e.u << ' ' << e.v << ' ' << format_real(g.weight_at(i)) << '\n';
  }
}

}  // namespace sensmatch
