#include "powergraph/exact.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "bits.hpp"
#include "powergraph/errors.hpp"

namespace powergraph {

using detail::Bits;

__extension__ using i128 = __int128;

namespace {

// Scales rational weights to integers by the lcm of the denominators.
std::vector<std::int64_t> integer_weights(const Graph& g) {
  std::vector<std::int64_t> w(g.n(), 1);
  if (!g.weighted()) return w;
  i128 scale = 1;
  for (Vertex v = 0; v < g.n(); ++v) {
    std::int64_t d = g.weight(v).denominator();
    scale = scale / std::gcd(static_cast<std::int64_t>(scale), d) * d;
    if (scale > std::numeric_limits<std::int32_t>::max()) {
      fail(ErrorKind::Size, "weight denominators too large for the exact solver");
    }
  }
  i128 total = 0;
  for (Vertex v = 0; v < g.n(); ++v) {
    const Rational& q = g.weight(v);
    i128 scaled = static_cast<i128>(q.numerator()) * (scale / q.denominator());
    total += scaled;
    if (total > std::numeric_limits<std::int64_t>::max() / 4) {
      fail(ErrorKind::Size, "total weight too large for the exact solver");
    }
    w[v] = static_cast<std::int64_t>(scaled);
  }
  return w;
}

void check_cap(const Graph& g, const ExactOptions& options, const char* what) {
  if (g.n() > options.vertex_cap) {
    fail(ErrorKind::Size, std::string(what) + ": " + std::to_string(g.n()) +
                              " vertices exceed the exact-solver cap of " +
                              std::to_string(options.vertex_cap));
  }
}

// Maximum-weight independent set by branch and bound with a greedy
// clique-cover bound (one vertex per clique at most).
class MwisSearch {
 public:
  MwisSearch(std::vector<Bits> adj, std::vector<std::int64_t> w)
      : n_(w.size()), adj_(std::move(adj)), w_(std::move(w)) {}

  std::vector<std::size_t> solve() {
    Bits all(n_);
    for (std::size_t v = 0; v < n_; ++v) all.set(v);
    greedy(all);
    std::vector<std::size_t> cur;
    expand(all, 0, cur);
    return best_set_;
  }

 private:
  void greedy(Bits avail) {
    std::vector<std::size_t> chosen;
    std::int64_t total = 0;
    while (avail.any()) {
      std::size_t v = avail.first();  // vertices are pre-sorted by weight
      chosen.push_back(v);
      total += w_[v];
      avail.reset(v);
      avail.subtract(adj_[v]);
    }
    best_ = total;
    best_set_ = std::move(chosen);
  }

  void expand(Bits P, std::int64_t cur_w, std::vector<std::size_t>& cur) {
    if (P.none()) {
      if (cur_w > best_) {
        best_ = cur_w;
        best_set_ = cur;
      }
      return;
    }
    std::vector<std::size_t> order;
    std::vector<std::int64_t> bound;
    Bits rest = P;
    std::int64_t acc = 0;
    while (rest.any()) {
      Bits cand = rest;
      std::int64_t heaviest = 0;
      std::size_t start = order.size();
      while (cand.any()) {
        std::size_t v = cand.first();
        order.push_back(v);
        heaviest = std::max(heaviest, w_[v]);
        rest.reset(v);
        cand.reset(v);
        cand &= adj_[v];
      }
      acc += heaviest;
      bound.resize(order.size(), acc);
      (void)start;
    }
    for (std::size_t i = order.size(); i-- > 0;) {
      if (cur_w + bound[i] <= best_) return;
      std::size_t v = order[i];
      P.reset(v);
      Bits child = P;
      child.subtract(adj_[v]);
      cur.push_back(v);
      expand(child, cur_w + w_[v], cur);
      cur.pop_back();
    }
  }

  std::size_t n_;
  std::vector<Bits> adj_;
  std::vector<std::int64_t> w_;
  std::int64_t best_ = -1;
  std::vector<std::size_t> best_set_;
};

// Returns the vertices of a maximum-weight independent set of g.
std::vector<Vertex> max_weight_independent_set(const Graph& g,
                                               const std::vector<std::int64_t>& w) {
  const std::size_t n = g.n();
  std::vector<Bits> closed(n, Bits(n));
  for (Vertex v = 0; v < n; ++v) {
    closed[v].set(v);
    for (Vertex u : g.neighbors(v)) closed[v].set(u);
  }
  Bits live(n);
  std::vector<Vertex> chosen;
  for (Vertex v = 0; v < n; ++v) {
    if (w[v] > 0) live.set(v);  // zero-weight vertices never help
  }
  // Reductions to a fixpoint: isolated vertices join; a vertex u whose closed
  // neighborhood contains that of a neighbor v with w(v) >= w(u) is dropped.
  bool changed = true;
  while (changed) {
    changed = false;
    for (Vertex v = 0; v < n; ++v) {
      if (!live.test(v)) continue;
      if (closed[v].and_count(live) == 1) {
        chosen.push_back(v);
        live.reset(v);
        changed = true;
      }
    }
    for (Vertex v = 0; v < n; ++v) {
      if (!live.test(v)) continue;
      for (Vertex u : g.neighbors(v)) {
        if (!live.test(u) || w[v] < w[u]) continue;
        if (w[v] == w[u] && closed[v].equal_within(closed[u], live) && v > u) continue;
        if (closed[v].subset_within(closed[u], live)) {
          live.reset(u);
          changed = true;
        }
      }
    }
  }
  // Remaining components are solved independently.
  Bits todo = live;
  while (todo.any()) {
    std::vector<Vertex> comp;
    Bits frontier(n);
    frontier.set(todo.first());
    Bits seen = frontier;
    while (frontier.any()) {
      Bits next(n);
      frontier.for_each([&](std::size_t v) {
        comp.push_back(static_cast<Vertex>(v));
        next |= closed[v];
      });
      next &= live;
      next.subtract(seen);
      seen |= next;
      frontier = next;
    }
    todo.subtract(seen);
    std::sort(comp.begin(), comp.end(), [&](Vertex a, Vertex b) {
      if (w[a] != w[b]) return w[a] > w[b];
      if (g.degree(a) != g.degree(b)) return g.degree(a) < g.degree(b);
      return a < b;
    });
    std::vector<std::size_t> local(n, 0);
    for (std::size_t i = 0; i < comp.size(); ++i) local[comp[i]] = i;
    std::vector<Bits> adj(comp.size(), Bits(comp.size()));
    std::vector<std::int64_t> lw(comp.size());
    for (std::size_t i = 0; i < comp.size(); ++i) {
      lw[i] = w[comp[i]];
      for (Vertex u : g.neighbors(comp[i])) {
        if (live.test(u)) adj[i].set(local[u]);
      }
    }
    for (std::size_t i : MwisSearch(std::move(adj), std::move(lw)).solve()) {
      chosen.push_back(comp[i]);
    }
  }
  return chosen;
}

// Minimum-weight dominating set as set cover over closed neighborhoods.
class DominationSearch {
 public:
  DominationSearch(const Graph& g, std::vector<std::int64_t> w)
      : n_(g.n()), w_(std::move(w)), closed_(n_, Bits(n_)) {
    for (Vertex v = 0; v < n_; ++v) {
      closed_[v].set(v);
      for (Vertex u : g.neighbors(v)) closed_[v].set(u);
    }
  }

  std::vector<Vertex> solve() {
    Bits required(n_);
    Bits avail(n_);
    std::vector<Vertex> forced;
    for (Vertex v = 0; v < n_; ++v) {
      required.set(v);
      avail.set(v);
    }
    for (Vertex v = 0; v < n_; ++v) {
      if (w_[v] == 0) {
        forced.push_back(v);
        required.subtract(closed_[v]);
        avail.reset(v);
      }
    }
    greedy(required, avail);
    std::vector<Vertex> cur = forced;
    search(required, avail, 0, cur);
    std::vector<Vertex> out = best_set_;
    return out;
  }

 private:
  void greedy(Bits required, Bits avail) {
    std::vector<Vertex> chosen;
    for (Vertex v = 0; v < n_; ++v) {
      if (w_[v] == 0) chosen.push_back(v);
    }
    std::int64_t total = 0;
    while (required.any()) {
      std::size_t pick = n_;
      std::size_t pick_cover = 0;
      avail.for_each([&](std::size_t c) {
        std::size_t cover = closed_[c].and_count(required);
        if (cover == 0) return;
        // Minimize w/cover, i.e. w_c * cover_pick < w_pick * cover_c.
        if (pick == n_ || static_cast<i128>(w_[c]) * pick_cover <
                              static_cast<i128>(w_[pick]) * cover) {
          pick = c;
          pick_cover = cover;
        }
      });
      chosen.push_back(static_cast<Vertex>(pick));
      total += w_[pick];
      required.subtract(closed_[pick]);
      avail.reset(pick);
    }
    best_ = total;
    best_set_ = std::move(chosen);
  }

  // Lower bound from a packing of elements with pairwise-disjoint candidate sets.
  std::int64_t packing_bound(const Bits& required, const Bits& avail) const {
    std::vector<std::pair<std::size_t, std::size_t>> elems;
    required.for_each([&](std::size_t e) {
      elems.emplace_back(closed_[e].and_count(avail), e);
    });
    std::sort(elems.begin(), elems.end());
    Bits used(n_);
    std::int64_t lb = 0;
    for (auto [cnt, e] : elems) {
      (void)cnt;
      Bits cands = closed_[e] & avail;
      if (cands.intersects(used)) continue;
      used |= cands;
      std::int64_t cheapest = std::numeric_limits<std::int64_t>::max();
      cands.for_each([&](std::size_t c) { cheapest = std::min(cheapest, w_[c]); });
      lb += cheapest;
    }
    return lb;
  }

  // Returns false when some required element has no candidate left.
  bool reduce(Bits& required, Bits& avail, std::int64_t& cost, std::vector<Vertex>& cur) {
    bool changed = true;
    while (changed) {
      changed = false;
      // Forced candidates.
      bool infeasible = false;
      required.for_each([&](std::size_t e) {
        if (infeasible || !required.test(e)) return;
        Bits cands = closed_[e] & avail;
        std::size_t c = cands.count();
        if (c == 0) {
          infeasible = true;
        } else if (c == 1) {
          std::size_t only = cands.first();
          cur.push_back(static_cast<Vertex>(only));
          cost += w_[only];
          required.subtract(closed_[only]);
          avail.reset(only);
          changed = true;
        }
      });
      if (infeasible) return false;
      if (required.none()) return true;
      // Dominated candidates.
      std::vector<std::size_t> cands;
      avail.for_each([&](std::size_t c) { cands.push_back(c); });
      for (std::size_t a : cands) {
        if (!avail.test(a)) continue;
        if (!closed_[a].intersects(required)) {
          avail.reset(a);
          changed = true;
          continue;
        }
        for (std::size_t b : cands) {
          if (a == b || !avail.test(b) || w_[b] > w_[a]) continue;
          if (!closed_[a].subset_within(closed_[b], required)) continue;
          if (w_[b] == w_[a] && closed_[b].subset_within(closed_[a], required) && b > a) continue;
          avail.reset(a);
          changed = true;
          break;
        }
      }
      // Dominated elements: covering e implies covering f when cands(e) ⊆ cands(f).
      std::vector<std::size_t> elems;
      required.for_each([&](std::size_t e) { elems.push_back(e); });
      for (std::size_t f : elems) {
        for (std::size_t e : elems) {
          if (e == f || !required.test(e)) continue;
          if (!closed_[e].subset_within(closed_[f], avail)) continue;
          if (closed_[f].subset_within(closed_[e], avail) && e > f) continue;
          required.reset(f);
          changed = true;
          break;
        }
      }
    }
    return true;
  }

  void search(Bits required, Bits avail, std::int64_t cost, std::vector<Vertex>& cur) {
    std::size_t mark = cur.size();
    if (!reduce(required, avail, cost, cur)) {
      cur.resize(mark);
      return;
    }
    if (required.none()) {
      if (cost < best_) {
        best_ = cost;
        best_set_ = cur;
      }
      cur.resize(mark);
      return;
    }
    if (cost + packing_bound(required, avail) >= best_) {
      cur.resize(mark);
      return;
    }
    // Branch on the required element with the fewest candidates.
    std::size_t pivot = n_;
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    required.for_each([&](std::size_t e) {
      std::size_t c = closed_[e].and_count(avail);
      if (c < fewest) {
        fewest = c;
        pivot = e;
      }
    });
    std::vector<std::pair<std::size_t, std::size_t>> options;
    (closed_[pivot] & avail).for_each([&](std::size_t c) {
      options.emplace_back(closed_[c].and_count(required), c);
    });
    std::sort(options.begin(), options.end(), [&](auto a, auto b) {
      // Prefer cheap per covered element, then larger coverage, then id.
      i128 lhs = static_cast<i128>(w_[a.second]) * b.first;
      i128 rhs = static_cast<i128>(w_[b.second]) * a.first;
      if (lhs != rhs) return lhs < rhs;
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    for (auto [cover, c] : options) {
      (void)cover;
      Bits req = required;
      req.subtract(closed_[c]);
      avail.reset(c);
      cur.push_back(static_cast<Vertex>(c));
      search(req, avail, cost + w_[c], cur);
      cur.pop_back();
    }
    cur.resize(mark);
  }

  std::size_t n_;
  std::vector<std::int64_t> w_;
  std::vector<Bits> closed_;
  std::int64_t best_ = std::numeric_limits<std::int64_t>::max();
  std::vector<Vertex> best_set_;
};

}  // namespace

Solution exact_mvc(const Graph& g, const ExactOptions& options) {
  check_cap(g, options, "exact_mvc");
  auto w = integer_weights(g);
  auto independent = max_weight_independent_set(g, w);
  std::vector<char> in_set(g.n(), 0);
  for (Vertex v : independent) in_set[v] = 1;
  std::vector<Vertex> cover;
  for (Vertex v = 0; v < g.n(); ++v) {
    if (!in_set[v]) cover.push_back(v);
  }
  return make_solution(g, ProblemKind::VC1, std::move(cover));
}

Solution exact_mds(const Graph& g, const ExactOptions& options) {
  check_cap(g, options, "exact_mds");
  if (g.n() == 0) return make_solution(g, ProblemKind::DS1, {});
  auto members = DominationSearch(g, integer_weights(g)).solve();
  return make_solution(g, ProblemKind::DS1, std::move(members));
}

Solution exact_mvc2(const Graph& g, const ExactOptions& options) {
  Solution s = exact_mvc(square(g), options);
  s.kind = ProblemKind::VC2;
  return s;
}

Solution exact_mds2(const Graph& g, const ExactOptions& options) {
  Solution s = exact_mds(square(g), options);
  s.kind = ProblemKind::DS2;
  return s;
}

}  // namespace powergraph
