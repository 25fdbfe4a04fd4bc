#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "powergraph/rational.hpp"

namespace powergraph {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

// Undirected simple graph on vertices 0..n-1 with sorted adjacency lists and
// optional nonnegative rational vertex weights.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n) {}

  // Throws Error(Input) on out-of-range endpoints, self-loops, or (unless
  // `merge_duplicates`) repeated edges.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges,
                          bool merge_duplicates = false);

  std::size_t n() const { return adj_.size(); }
  std::size_t m() const;
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  std::size_t degree(Vertex v) const { return adj_[v].size(); }
  std::size_t max_degree() const;
  bool has_edge(Vertex u, Vertex v) const;
  // Edges with u < v, in lexicographic order.
  std::vector<Edge> edges() const;

  bool weighted() const { return weights_.has_value(); }
  Rational weight(Vertex v) const { return weights_ ? (*weights_)[v] : Rational(1); }
  const std::optional<std::vector<Rational>>& weights() const { return weights_; }
  // Throws Error(Input) on size mismatch or a negative weight.
  void set_weights(std::vector<Rational> weights);
  void clear_weights() { weights_.reset(); }

  bool operator==(const Graph&) const = default;

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::optional<std::vector<Rational>> weights_;
};

enum class ProblemKind { VC2, DS2, VC1, DS1 };

const char* to_string(ProblemKind kind);
bool is_square_kind(ProblemKind kind);
bool is_cover_kind(ProblemKind kind);

struct Solution {
  ProblemKind kind = ProblemKind::VC2;
  std::vector<Vertex> members;  // sorted, unique
  Rational value{0};
};

// Sorts and deduplicates `members` and computes the value under g's weights.
Solution make_solution(const Graph& g, ProblemKind kind, std::vector<Vertex> members);
Rational total_weight(const Graph& g, std::span<const Vertex> members);

// Materialized G^2 (vertex set and weights unchanged).
Graph square(const Graph& g);

// On-demand distance-at-most-two predicate, for graphs whose square is too
// dense to materialize.
class SquareView {
 public:
  explicit SquareView(const Graph& base) : base_(&base) {}
  const Graph& base() const { return *base_; }
  bool adjacent(Vertex u, Vertex v) const;
  // Closed 2-hop neighborhood of v, sorted.
  std::vector<Vertex> closed_neighborhood(Vertex v) const;

 private:
  const Graph* base_;
};

bool within_distance_two(const Graph& g, Vertex u, Vertex v);

// Throws Error(Input) when a member id is out of range.
bool is_feasible(const Graph& g, ProblemKind kind, std::span<const Vertex> members);

bool is_connected(const Graph& g);
// BFS distances from `source`; unreachable vertices get SIZE_MAX.
std::vector<std::size_t> bfs_distances(const Graph& g, Vertex source);
std::size_t diameter(const Graph& g);

// Subgraph induced by `vertices` (relabelled 0..k-1 in the given order),
// weights carried over.
Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

// Greedy maximal matching in edge order; both endpoints of each matched edge.
Solution matching_2approx(const Graph& g);

}  // namespace powergraph
