#include "powergraph/mvc_centralized.hpp"

#include <algorithm>
#include <optional>
#include <span>

#include "bits.hpp"

namespace powergraph {

namespace {

class Residual {
 public:
  explicit Residual(const Graph& h) : n_(h.n()), adj_(h.n(), detail::Bits(h.n())), alive_(h.n()), deg_(h.n()) {
    for (Vertex v = 0; v < n_; ++v) {
      for (Vertex u : h.neighbors(v)) adj_[v].set(u);
      alive_.set(v);
      deg_[v] = h.degree(v);
    }
  }

  bool alive(Vertex v) const { return alive_.test(v); }
  std::size_t degree(Vertex v) const { return deg_[v]; }
  std::size_t n() const { return n_; }

  // Live neighbors of v in increasing order.
  std::vector<Vertex> neighbors(Vertex v) const {
    std::vector<Vertex> out;
    detail::Bits live = adj_[v];
    live &= alive_;
    live.for_each([&](std::size_t u) { out.push_back(static_cast<Vertex>(u)); });
    return out;
  }

  // Smallest (b, c) with a < b < c forming a live triangle with a.
  bool smallest_triangle_at(Vertex a, Vertex& b, Vertex& c) const {
    detail::Bits na = adj_[a];
    na &= alive_;
    bool found = false;
    na.for_each([&](std::size_t y) {
      if (found || y <= a) return;
      detail::Bits common = na;
      common &= adj_[y];
      common.for_each([&](std::size_t z) {
        if (found || z <= y) return;
        b = static_cast<Vertex>(y);
        c = static_cast<Vertex>(z);
        found = true;
      });
    });
    return found;
  }

  // Removes the whole set at once, then every vertex left at degree zero.
  // All of them are appended to `left`.
  void take(std::span<const Vertex> set, std::vector<Vertex>& left) {
    for (Vertex v : set) {
      alive_.reset(v);
      left.push_back(v);
    }
    for (Vertex v : set) {
      adj_[v].for_each([&](std::size_t u) { --deg_[u]; });
    }
    drop_isolated(left);
  }

  void drop_isolated(std::vector<Vertex>& left) {
    for (Vertex v = 0; v < n_; ++v) {
      if (alive(v) && deg_[v] == 0) {
        alive_.reset(v);
        left.push_back(v);
      }
    }
  }

  std::vector<Vertex> live_vertices() const {
    std::vector<Vertex> out;
    alive_.for_each([&](std::size_t v) { out.push_back(static_cast<Vertex>(v)); });
    return out;
  }

 private:
  std::size_t n_;
  std::vector<detail::Bits> adj_;
  detail::Bits alive_;
  std::vector<std::size_t> deg_;
};

}  // namespace

Mvc53Result mvc53(const Graph& h) {
  Residual res(h);
  PhaseTrace t;
  auto take = [&](std::vector<Vertex> set, std::vector<Vertex>& V, std::vector<Vertex>& W) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    V.insert(V.end(), set.begin(), set.end());
    res.take(set, W);
  };

  // Part 1: lexicographically first triangle, repeatedly. Removing vertices
  // never creates triangles, so one sweep over the smallest corner suffices.
  res.drop_isolated(t.W1);
  for (Vertex a = 0; a < res.n(); ++a) {
    Vertex b = 0, c = 0;
    if (res.alive(a) && res.smallest_triangle_at(a, b, c)) {
      take({a, b, c}, t.V1, t.W1);
    }
  }
  t.R = res.live_vertices();

  // Part 2: lowest degree first, smallest id on ties.
  for (;;) {
    std::optional<Vertex> x;
    for (Vertex v = 0; v < res.n(); ++v) {
      if (!res.alive(v) || res.degree(v) > 3) continue;
      if (!x || res.degree(v) < res.degree(*x)) x = v;
    }
    if (!x) break;
    auto y = res.neighbors(*x);
    std::vector<Vertex> pick;
    if (y.size() == 1) {
      pick = {y[0]};
    } else if (y.size() == 2) {
      std::optional<Vertex> z;
      for (Vertex u : res.neighbors(y[0])) {
        if (u != *x) {
          z = u;
          break;
        }
      }
      if (!z) ++t.precondition_failures;
      pick = {y[0], y[1]};
      if (z) pick.insert(pick.begin(), *z);
    } else {
      std::optional<Vertex> z1, z2;
      for (Vertex u : res.neighbors(y[0])) {
        if (u != *x) {
          z1 = u;
          break;
        }
      }
      for (Vertex u : res.neighbors(y[1])) {
        if (u != *x && u != z1) {
          z2 = u;
          break;
        }
      }
      const bool ok = z1 && z2 && *z1 != y[1] && *z1 != y[2] && *z2 != y[0] && *z2 != y[2];
      if (!ok) ++t.precondition_failures;
      pick = {y[0], y[1], y[2]};
      if (z1) pick.push_back(*z1);
      if (z2) pick.push_back(*z2);
    }
    take(std::move(pick), t.V2, t.W2);
  }
  t.Rprime = res.live_vertices();

  // Part 3: maximal matching on what is left.
  Graph rest = induced_subgraph(h, t.Rprime);
  for (Vertex i : matching_2approx(rest).members) t.V3.push_back(t.Rprime[i]);
  t.W3 = t.Rprime;

  t.s1 = t.V1.size();
  t.s2 = t.V2.size();
  t.s3 = t.V3.size();
  std::vector<Vertex> all = t.V1;
  all.insert(all.end(), t.V2.begin(), t.V2.end());
  all.insert(all.end(), t.V3.begin(), t.V3.end());
  Mvc53Result out;
  out.solution = make_solution(h, ProblemKind::VC1, std::move(all));
  out.trace = std::move(t);
  return out;
}

Mvc53Result g2mvc_53(const Graph& g) {
  Mvc53Result out = mvc53(square(g));
  out.solution = make_solution(g, ProblemKind::VC2, std::move(out.solution.members));
  return out;
}

MvcRun g2mvc_hybrid(const Graph& g, const MvcOptions& options) {
  MvcOptions opts = options;
  opts.model.variant = sim::Variant::Congest;
  return g2mvc_eps_with(
      g, Rational(1, 2),
      [](const InducedGraph& H, std::span<const Edge>) { return mvc53(H.graph).solution.members; },
      opts);
}

}  // namespace powergraph
