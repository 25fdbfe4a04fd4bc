#include "powergraph/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

#include "powergraph/errors.hpp"

namespace powergraph {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges, bool merge_duplicates) {
  Graph g(n);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      fail(ErrorKind::Input, "edge {" + std::to_string(u) + "," + std::to_string(v) +
                                 "} out of range for n=" + std::to_string(n));
    }
    if (u == v) fail(ErrorKind::Input, "self-loop at vertex " + std::to_string(u));
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  for (Vertex v = 0; v < n; ++v) {
    auto& list = g.adj_[v];
    std::sort(list.begin(), list.end());
    auto dup = std::adjacent_find(list.begin(), list.end());
    if (dup != list.end()) {
      if (!merge_duplicates) {
        fail(ErrorKind::Input,
             "duplicate edge {" + std::to_string(v) + "," + std::to_string(*dup) + "}");
      }
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
  }
  return g;
}

std::size_t Graph::m() const {
  std::size_t total = 0;
  for (const auto& list : adj_) total += list.size();
  return total / 2;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (const auto& list : adj_) best = std::max(best, list.size());
  return best;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u >= n() || v >= n()) return false;
  const auto& list = adj_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(m());
  for (Vertex u = 0; u < n(); ++u) {
    for (Vertex v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

void Graph::set_weights(std::vector<Rational> weights) {
  if (weights.size() != n()) {
    fail(ErrorKind::Input, "weight vector has " + std::to_string(weights.size()) +
                               " entries, expected " + std::to_string(n()));
  }
  for (std::size_t v = 0; v < weights.size(); ++v) {
    if (weights[v] < 0) fail(ErrorKind::Input, "negative weight on vertex " + std::to_string(v));
  }
  weights_ = std::move(weights);
}

const char* to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::VC2: return "vc2";
    case ProblemKind::DS2: return "ds2";
    case ProblemKind::VC1: return "vc1";
    case ProblemKind::DS1: return "ds1";
  }
  return "?";
}

bool is_square_kind(ProblemKind kind) {
  return kind == ProblemKind::VC2 || kind == ProblemKind::DS2;
}

bool is_cover_kind(ProblemKind kind) {
  return kind == ProblemKind::VC2 || kind == ProblemKind::VC1;
}

Rational total_weight(const Graph& g, std::span<const Vertex> members) {
  if (!g.weighted()) return Rational(static_cast<std::int64_t>(members.size()));
  Rational sum(0);
  for (Vertex v : members) sum += g.weight(v);
  return sum;
}

Solution make_solution(const Graph& g, ProblemKind kind, std::vector<Vertex> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  Solution s;
  s.kind = kind;
  s.value = total_weight(g, members);
  s.members = std::move(members);
  return s;
}

namespace {

// Appends the sorted union of N[v] and N(N(v)) into `out` (cleared first).
void two_hop_closed(const Graph& g, Vertex v, std::vector<Vertex>& out,
                    std::vector<std::uint32_t>& stamp, std::uint32_t mark) {
  out.clear();
  auto visit = [&](Vertex u) {
    if (stamp[u] != mark) {
      stamp[u] = mark;
      out.push_back(u);
    }
  };
  visit(v);
  for (Vertex u : g.neighbors(v)) {
    visit(u);
    for (Vertex w : g.neighbors(u)) visit(w);
  }
  std::sort(out.begin(), out.end());
}

}  // namespace

Graph square(const Graph& g) {
  const std::size_t n = g.n();
  std::vector<Edge> edges;
  std::vector<Vertex> ball;
  std::vector<std::uint32_t> stamp(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    two_hop_closed(g, v, ball, stamp, v + 1);
    for (Vertex u : ball) {
      if (u > v) edges.emplace_back(v, u);
    }
  }
  Graph sq = Graph::from_edges(n, edges);
  if (g.weighted()) sq.set_weights(*g.weights());
  return sq;
}

bool within_distance_two(const Graph& g, Vertex u, Vertex v) {
  if (u == v) return false;
  if (g.has_edge(u, v)) return true;
  auto a = g.neighbors(u);
  auto b = g.neighbors(v);
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia == *ib) return true;
    if (*ia < *ib) ++ia; else ++ib;
  }
  return false;
}

bool SquareView::adjacent(Vertex u, Vertex v) const {
  return within_distance_two(*base_, u, v);
}

std::vector<Vertex> SquareView::closed_neighborhood(Vertex v) const {
  std::vector<Vertex> out;
  std::vector<std::uint32_t> stamp(base_->n(), 0);
  two_hop_closed(*base_, v, out, stamp, 1);
  return out;
}

bool is_feasible(const Graph& g, ProblemKind kind, std::span<const Vertex> members) {
  const std::size_t n = g.n();
  std::vector<char> in(n, 0);
  for (Vertex v : members) {
    if (v >= n) {
      fail(ErrorKind::Input, "member " + std::to_string(v) + " out of range for n=" +
                                 std::to_string(n));
    }
    in[v] = 1;
  }
  const bool sq = is_square_kind(kind);
  if (is_cover_kind(kind)) {
    for (Vertex u = 0; u < n; ++u) {
      if (in[u]) continue;
      // Every neighbor of u in the designated graph must be chosen.
      for (Vertex w : g.neighbors(u)) {
        if (!in[w]) return false;
        if (sq) {
          for (Vertex x : g.neighbors(w)) {
            if (x != u && !in[x]) return false;
          }
        }
      }
    }
    return true;
  }
  for (Vertex u = 0; u < n; ++u) {
    if (in[u]) continue;
    bool dominated = false;
    for (Vertex w : g.neighbors(u)) {
      if (in[w]) { dominated = true; break; }
      if (sq) {
        for (Vertex x : g.neighbors(w)) {
          if (in[x]) { dominated = true; break; }
        }
        if (dominated) break;
      }
    }
    if (!dominated) return false;
  }
  return true;
}

std::vector<std::size_t> bfs_distances(const Graph& g, Vertex source) {
  constexpr auto kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.n(), kInf);
  if (source >= g.n()) return dist;
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex u : g.neighbors(v)) {
      if (dist[u] == kInf) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return dist;
}

bool is_connected(const Graph& g) {
  if (g.n() == 0) return true;
  auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](std::size_t d) {
    return d == std::numeric_limits<std::size_t>::max();
  });
}

std::size_t diameter(const Graph& g) {
  std::size_t best = 0;
  for (Vertex v = 0; v < g.n(); ++v) {
    for (std::size_t d : bfs_distances(g, v)) {
      if (d != std::numeric_limits<std::size_t>::max()) best = std::max(best, d);
    }
  }
  return best;
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  std::vector<std::int64_t> index(g.n(), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) index[vertices[i]] = static_cast<std::int64_t>(i);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (Vertex u : g.neighbors(vertices[i])) {
      std::int64_t j = index[u];
      if (j > static_cast<std::int64_t>(i)) {
        edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
      }
    }
  }
  Graph sub = Graph::from_edges(vertices.size(), edges);
  if (g.weighted()) {
    std::vector<Rational> w;
    w.reserve(vertices.size());
    for (Vertex v : vertices) w.push_back(g.weight(v));
    sub.set_weights(std::move(w));
  }
  return sub;
}

Solution matching_2approx(const Graph& g) {
  std::vector<char> matched(g.n(), 0);
  std::vector<Vertex> cover;
  for (const auto& [u, v] : g.edges()) {
    if (!matched[u] && !matched[v]) {
      matched[u] = matched[v] = 1;
      cover.push_back(u);
      cover.push_back(v);
    }
  }
  return make_solution(g, ProblemKind::VC1, std::move(cover));
}

}  // namespace powergraph
