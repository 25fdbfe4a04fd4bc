#include "powergraph_cli/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "powergraph/errors.hpp"

namespace powergraph::cli {

namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  fail(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string t; ss >> t;) out.push_back(t);
  return out;
}

std::uint64_t parse_count(const std::string& tok, std::size_t line) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) parse_error(line, "expected a count, got '" + tok + "'");
  return v;
}

Vertex parse_vertex(const std::string& tok, std::size_t n, std::size_t line) {
  const std::uint64_t v = parse_count(tok, line);
  if (v >= n) parse_error(line, "vertex " + tok + " out of range");
  return static_cast<Vertex>(v);
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Input, "cannot open '" + path + "'");
  return in;
}

}  // namespace

Graph read_graph(std::istream& in) {
  std::optional<std::size_t> n, m;
  bool weighted = false;
  std::vector<Edge> edges;
  std::set<Edge> seen;
  std::vector<Rational> weights;
  std::vector<char> has_weight;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = tokens(line);
    if (t.empty() || t[0][0] == 'c') continue;
    if (t[0] == "p") {
      if (n) parse_error(lineno, "second header");
      if (t.size() < 3 || t.size() > 4) parse_error(lineno, "header is 'p <n> <m> [weighted]'");
      n = parse_count(t[1], lineno);
      m = parse_count(t[2], lineno);
      if (t.size() == 4) {
        if (t[3] != "weighted") parse_error(lineno, "unknown header flag '" + t[3] + "'");
        weighted = true;
        weights.assign(*n, Rational(1));
        has_weight.assign(*n, 0);
      }
      continue;
    }
    if (!n) parse_error(lineno, "missing header");
    if (t[0] == "e") {
      if (t.size() != 3) parse_error(lineno, "edge line is 'e <u> <v>'");
      Vertex u = parse_vertex(t[1], *n, lineno), v = parse_vertex(t[2], *n, lineno);
      if (u == v) parse_error(lineno, "self-loop");
      Edge e = u < v ? Edge{u, v} : Edge{v, u};
      if (!seen.insert(e).second) parse_error(lineno, "duplicate edge");
      edges.push_back(e);
    } else if (t[0] == "w") {
      if (!weighted) parse_error(lineno, "weight line in an unweighted graph");
      if (t.size() != 3) parse_error(lineno, "weight line is 'w <v> <num>[/<den>]'");
      Vertex v = parse_vertex(t[1], *n, lineno);
      if (has_weight[v]) parse_error(lineno, "second weight for vertex " + t[1]);
      try {
        weights[v] = parse_rational(t[2]);
      } catch (const Error& e) {
        parse_error(lineno, e.what());
      }
      if (weights[v] < 0) parse_error(lineno, "negative weight");
      has_weight[v] = 1;
    } else {
      parse_error(lineno, "unknown line type '" + t[0] + "'");
    }
  }
  if (!n) parse_error(lineno, "missing header");
  if (edges.size() != *m) {
    parse_error(lineno, "header announces " + std::to_string(*m) + " edges, found " + std::to_string(edges.size()));
  }
  Graph g = Graph::from_edges(*n, edges);
  if (weighted) g.set_weights(std::move(weights));
  return g;
}

Graph read_graph_file(const std::string& path) {
  auto in = open_in(path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << "p " << g.n() << ' ' << g.m() << (g.weighted() ? " weighted" : "") << '\n';
  for (auto [u, v] : g.edges()) out << "e " << u << ' ' << v << '\n';
  if (g.weighted()) {
    for (Vertex v = 0; v < g.n(); ++v) out << "w " << v << ' ' << format_rational(g.weight(v)) << '\n';
  }
}

void write_graph_file(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Input, "cannot write '" + path + "'");
  write_graph(out, g);
}

std::vector<Vertex> read_vertex_set(std::istream& in) {
  std::vector<Vertex> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    for (const auto& t : tokens(line)) {
      const std::uint64_t v = parse_count(t, lineno);
      if (v > UINT32_MAX) parse_error(lineno, "vertex id too large");
      out.push_back(static_cast<Vertex>(v));
    }
  }
  return out;
}

std::vector<Vertex> read_vertex_set_file(const std::string& path) {
  auto in = open_in(path);
  return read_vertex_set(in);
}

}  // namespace powergraph::cli
