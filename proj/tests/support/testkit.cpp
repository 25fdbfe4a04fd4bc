#include "testkit.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace testkit {

using powergraph::Edge;

Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return Graph::from_edges(n, e);
}

Graph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  e.emplace_back(0, static_cast<Vertex>(n - 1));
  return Graph::from_edges(n, e);
}

Graph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (Vertex v = 1; v <= leaves; ++v) e.emplace_back(0, v);
  return Graph::from_edges(leaves + 1, e);
}

Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph::from_edges(n, e);
}

Graph weighted(Graph g, const std::vector<std::int64_t>& w) {
  std::vector<Rational> q;
  for (auto x : w) q.emplace_back(x);
  g.set_weights(q);
  return g;
}

namespace {

Rational mask_weight(const Graph& h, std::uint32_t mask) {
  Rational sum(0);
  for (Vertex v = 0; v < h.n(); ++v)
    if (mask >> v & 1U) sum += h.weight(v);
  return sum;
}

template <typename Pred>
Rational brute_min(const Graph& h, Pred feasible) {
  if (h.n() > 24) throw std::invalid_argument("brute force limited to 24 vertices");
  bool found = false;
  Rational best(0);
  const std::uint32_t limit = h.n() == 32 ? 0 : (1U << h.n());
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    if (!feasible(mask)) continue;
    Rational w = mask_weight(h, mask);
    if (!found || w < best) {
      best = w;
      found = true;
    }
  }
  return best;
}

}  // namespace

Rational brute_mvc(const Graph& h) {
  std::vector<std::uint32_t> adj(h.n(), 0);
  for (Vertex v = 0; v < h.n(); ++v)
    for (Vertex u : h.neighbors(v)) adj[v] |= 1U << u;
  return brute_min(h, [&](std::uint32_t mask) {
    for (Vertex v = 0; v < h.n(); ++v)
      if (!(mask >> v & 1U) && (adj[v] & ~mask)) return false;
    return true;
  });
}

Rational brute_mds(const Graph& h) {
  std::vector<std::uint32_t> closed(h.n(), 0);
  for (Vertex v = 0; v < h.n(); ++v) {
    closed[v] = 1U << v;
    for (Vertex u : h.neighbors(v)) closed[v] |= 1U << u;
  }
  return brute_min(h, [&](std::uint32_t mask) {
    for (Vertex v = 0; v < h.n(); ++v)
      if (!(closed[v] & mask)) return false;
    return true;
  });
}

std::vector<Graph> connected_graphs_up_to_iso(std::size_t n) {
  std::vector<Edge> pairs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  std::vector<std::vector<Vertex>> perms;
  std::vector<Vertex> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p); while (std::next_permutation(p.begin(), p.end()));
  // Index of pair (u,v) in `pairs`.
  std::vector<std::vector<std::size_t>> idx(n, std::vector<std::size_t>(n, 0));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    idx[pairs[i].first][pairs[i].second] = i;
    idx[pairs[i].second][pairs[i].first] = i;
  }
  std::set<std::uint64_t> seen;
  std::vector<Graph> out;
  const std::uint64_t total = std::uint64_t{1} << pairs.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::uint64_t canon = mask;
    for (const auto& perm : perms) {
      std::uint64_t image = 0;
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if (mask >> i & 1U) image |= std::uint64_t{1} << idx[perm[pairs[i].first]][perm[pairs[i].second]];
      canon = std::min(canon, image);
    }
    if (canon != mask || !seen.insert(canon).second) continue;
    std::vector<Edge> e;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1U) e.push_back(pairs[i]);
    Graph g = Graph::from_edges(n, e);
    if (powergraph::is_connected(g)) out.push_back(std::move(g));
  }
  return out;
}

std::size_t two_hop_count(const Graph& g, Vertex v, const std::vector<char>& in_u) {
  auto dist = powergraph::bfs_distances(g, v);
  std::size_t c = 0;
  for (Vertex u = 0; u < g.n(); ++u)
    if (dist[u] <= 2 && in_u[u]) ++c;
  return c;
}

}  // namespace testkit
