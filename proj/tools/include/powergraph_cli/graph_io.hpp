#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "powergraph/graph.hpp"

namespace powergraph::cli {

// Text format, 0-indexed:
//   p <n> <m> [weighted]
//   e <u> <v>          (m lines)
//   w <v> <num>[/<den>] (weighted graphs; vertices without a line weigh 1)
// Blank lines and lines starting with 'c' are ignored. Throws Error(Parse)
// with the offending line number.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);

// Edges in lexicographic order; every weight is written for weighted graphs.
void write_graph(std::ostream& out, const Graph& g);
void write_graph_file(const std::string& path, const Graph& g);

// Whitespace-separated vertex ids; '#' starts a comment. Throws Error(Parse).
std::vector<Vertex> read_vertex_set(std::istream& in);
std::vector<Vertex> read_vertex_set_file(const std::string& path);

}  // namespace powergraph::cli
