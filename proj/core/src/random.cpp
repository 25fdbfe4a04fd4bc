#include "powergraph/random.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "powergraph/errors.hpp"

namespace powergraph {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
      static_cast<std::uint32_t>(splitmix64(seed ^ splitmix64(stream)))};
  return std::mt19937_64(seq);
}

double uniform_open_closed(std::mt19937_64& rng) {
  std::uint64_t bits = rng() >> 11;  // 53 bits
  return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  std::uint64_t limit = bound * (std::mt19937_64::max() / bound);
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

double exponential(std::mt19937_64& rng) { return -std::log(uniform_open_closed(rng)); }

Graph gnp(std::size_t n, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) fail(ErrorKind::Input, "edge probability must lie in [0,1]");
  auto rng = make_stream(seed, 0x676e70);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (uniform_open_closed(rng) <= p && p > 0.0) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, edges);
}

Graph connected_gnp(std::size_t n, double p, std::uint64_t seed) {
  if (n == 0) fail(ErrorKind::Input, "connected graph needs at least one vertex");
  if (n > 1 && p <= 0.0) fail(ErrorKind::Input, "p = 0 cannot yield a connected graph");
  for (std::uint64_t attempt = 0;; ++attempt) {
    Graph g = gnp(n, p, splitmix64(seed + attempt * 0x632be59bd9b4e019ULL));
    if (is_connected(g)) return g;
    if (attempt > 100000) {
      fail(ErrorKind::Generation, "no connected G(n,p) sample after 100000 attempts");
    }
  }
}

Graph random_tree(std::size_t n, std::uint64_t seed) {
  if (n <= 1) return Graph(n);
  if (n == 2) return Graph::from_edges(2, std::vector<Edge>{{0, 1}});
  auto rng = make_stream(seed, 0x74726565);
  std::vector<Vertex> prufer(n - 2);
  for (auto& x : prufer) x = static_cast<Vertex>(uniform_below(rng, n));
  std::vector<std::size_t> degree(n, 1);
  for (Vertex x : prufer) ++degree[x];
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaves;
  for (Vertex v = 0; v < n; ++v) {
    if (degree[v] == 1) leaves.push(v);
  }
  std::vector<Edge> edges;
  for (Vertex x : prufer) {
    Vertex leaf = leaves.top();
    leaves.pop();
    edges.emplace_back(std::min(leaf, x), std::max(leaf, x));
    if (--degree[x] == 1) leaves.push(x);
  }
  Vertex a = leaves.top();
  leaves.pop();
  Vertex b = leaves.top();
  edges.emplace_back(std::min(a, b), std::max(a, b));
  return Graph::from_edges(n, edges);
}

Graph with_random_weights(Graph g, std::int64_t max_weight, std::uint64_t seed) {
  if (max_weight < 1) fail(ErrorKind::Input, "maximum weight must be at least 1");
  auto rng = make_stream(seed, 0x77656967);
  std::vector<Rational> w(g.n());
  for (auto& x : w) {
    x = Rational(1 + static_cast<std::int64_t>(
                         uniform_below(rng, static_cast<std::uint64_t>(max_weight))));
  }
  g.set_weights(std::move(w));
  return g;
}

}  // namespace powergraph
