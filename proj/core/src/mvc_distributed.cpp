#include "powergraph/mvc_distributed.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "powergraph/errors.hpp"
#include "powergraph/random.hpp"
#include "powergraph/sim/primitives.hpp"

namespace powergraph {

using sim::Inbox;
using sim::Item;
using sim::Message;
using sim::NodeContext;
using sim::Outbox;
using sim::Payload;
using sim::Reader;
using sim::Word;

namespace {

std::size_t neighbor_index(std::span<const Vertex> nbrs, Vertex u) {
  return static_cast<std::size_t>(std::lower_bound(nbrs.begin(), nbrs.end(), u) - nbrs.begin());
}

struct Fired {
  std::size_t round = 0;
  Vertex center = 0;
  std::vector<Vertex> batch;
};

// State shared by the unweighted and voting Phase-I programs: membership in
// R and C, and which neighbors are still in R.
class RemainingView {
 public:
  explicit RemainingView(NodeContext ctx)
      : ctx_(std::move(ctx)), nbr_in_r_(ctx_.neighbors.size(), 1), d_r_(ctx_.neighbors.size()) {}

  void send_status(Outbox& out) {
    if (!pending_status_) return;
    Payload p;
    p.put(0);
    out.broadcast(p);
    pending_status_ = false;
  }
  void receive_status(const Inbox& in) {
    for (const Message& m : in) {
      std::size_t i = neighbor_index(ctx_.neighbors, m.from);
      if (nbr_in_r_[i]) {
        nbr_in_r_[i] = 0;
        --d_r_;
      }
    }
  }
  void send_joins(std::size_t round, Outbox& out) {
    Fired f{round, ctx_.id, {}};
    Payload p;
    p.put(1);
    for (std::size_t i = 0; i < ctx_.neighbors.size(); ++i) {
      if (!nbr_in_r_[i]) continue;
      out.send(ctx_.neighbors[i], p);
      f.batch.push_back(ctx_.neighbors[i]);
    }
    fired = std::move(f);
    in_c_ = false;
  }
  void receive_joins(const Inbox& in) {
    if (!in.empty() && in_r) {
      in_r = false;
      pending_status_ = true;
    }
  }

  bool in_r = true;
  std::optional<Fired> fired;

 protected:
  NodeContext ctx_;
  std::vector<char> nbr_in_r_;
  std::size_t d_r_;
  bool in_c_ = true;
  bool pending_status_ = false;
};

// Four rounds per iteration: status, candidacy, relay of the largest
// candidate id, joins from every candidate that is the 2-hop maximum.
class MaxIdPhase1 : public RemainingView {
 public:
  MaxIdPhase1(NodeContext ctx, std::size_t l) : RemainingView(std::move(ctx)), l_(l) {}

  void send(std::size_t round, Outbox& out) {
    switch ((round - 1) % 4) {
      case 0:
        send_status(out);
        break;
      case 1:
        if (candidate_) {
          Payload p;
          p.put(ctx_.id);
          out.broadcast(p);
        }
        break;
      case 2:
        if (best_) {
          Payload p;
          p.put(*best_);
          out.broadcast(p);
        }
        break;
      case 3:
        if (candidate_ && best_ == ctx_.id) send_joins(round, out);
        candidate_ = false;
        break;
    }
  }
  void receive(std::size_t round, const Inbox& in) {
    switch ((round - 1) % 4) {
      case 0:
        receive_status(in);
        candidate_ = in_c_ && d_r_ > l_;
        best_.reset();
        if (candidate_) best_ = ctx_.id;
        break;
      case 1:
      case 2:
        for (const Message& m : in) {
          Vertex id = static_cast<Vertex>(m.words[0]);
          if (!best_ || id > *best_) best_ = id;
        }
        break;
      case 3:
        receive_joins(in);
        break;
    }
  }
  bool halted() const { return false; }
  bool idle() const { return !pending_status_ && !(in_c_ && d_r_ > l_); }

 private:
  std::size_t l_;
  bool candidate_ = false;
  std::optional<Vertex> best_;
};

class VotingPhase1 : public RemainingView {
 public:
  VotingPhase1(NodeContext ctx, std::size_t threshold)
      : RemainingView(std::move(ctx)), threshold_(threshold) {
    const std::uint64_t n = ctx_.n;
    rank_bound_ = n > 65535 ? ~std::uint64_t{0} : n * n * n * n;
    rank_words_ = sim::words_for_bound(rank_bound_, ctx_.word_bits);
  }

  void send(std::size_t round, Outbox& out) {
    switch ((round - 1) % 4) {
      case 0:
        send_status(out);
        break;
      case 1:
        if (candidate_) {
          rank_ = uniform_below(ctx_.rng, rank_bound_);
          Payload p;
          p.put_wide(rank_, rank_words_, ctx_.word_bits);
          out.broadcast(p);
        }
        break;
      case 2:
        if (in_r && choice_) {
          Payload p;
          p.put(1);
          out.send(choice_->second, p);
        }
        break;
      case 3:
        if (candidate_ && 8 * tally_ >= d_r_) send_joins(round, out);
        candidate_ = false;
        break;
    }
  }
  void receive(std::size_t round, const Inbox& in) {
    switch ((round - 1) % 4) {
      case 0:
        receive_status(in);
        if (in_c_ && d_r_ <= threshold_) in_c_ = false;
        candidate_ = in_c_;
        choice_.reset();
        tally_ = 0;
        break;
      case 1:
        for (const Message& m : in) {
          Reader r(m.words);
          std::pair<std::uint64_t, Vertex> offer{r.get_wide(rank_words_, ctx_.word_bits), m.from};
          if (!choice_ || offer > *choice_) choice_ = offer;
        }
        break;
      case 2:
        tally_ = in.size();
        break;
      case 3:
        receive_joins(in);
        break;
    }
  }
  bool halted() const { return false; }
  bool idle() const { return !pending_status_ && !(in_c_ && d_r_ > threshold_); }

 private:
  std::size_t threshold_;
  std::uint64_t rank_bound_;
  std::size_t rank_words_;
  bool candidate_ = false;
  std::uint64_t rank_ = 0;
  std::optional<std::pair<std::uint64_t, Vertex>> choice_;
  std::size_t tally_ = 0;
};

// Weighted scan: slot c occupies rounds 2c+1 and 2c+2. In the first round
// every neighbor of c reports (in R, weight); in the second c sends joins to
// the members of every selectable class.
class WeightedScan {
 public:
  WeightedScan(NodeContext ctx, Rational weight, Rational eps)
      : in_r(weight.numerator() != 0), ctx_(std::move(ctx)), weight_(weight), eps_(eps) {}

  bool in_r;
  std::vector<Fired> fired;

  void send(std::size_t round, Outbox& out) {
    const Vertex c = static_cast<Vertex>((round - 1) / 2);
    if ((round - 1) % 2 == 0) {
      if (std::binary_search(ctx_.neighbors.begin(), ctx_.neighbors.end(), c)) {
        Payload p;
        p.put(in_r ? 1 : 0);
        p.put_wide(static_cast<std::uint64_t>(weight_.numerator()), words_, ctx_.word_bits);
        p.put_wide(static_cast<std::uint64_t>(weight_.denominator()), words_, ctx_.word_bits);
        out.send(c, p);
      }
      return;
    }
    if (c != ctx_.id || reports_.empty()) return;
    std::optional<Rational> w_min;
    for (const auto& r : reports_) {
      if (r.weight > 0 && (!w_min || r.weight < *w_min)) w_min = r.weight;
    }
    if (!w_min) return;
    std::map<int, std::vector<const Report*>> classes;
    for (const auto& r : reports_) {
      if (r.in_r && r.weight > 0) classes[weight_class(r.weight, *w_min)].push_back(&r);
    }
    Payload join;
    join.put(1);
    for (const auto& [cls, members] : classes) {
      Rational total(0), heaviest(0);
      for (const Report* r : members) {
        total += r->weight;
        heaviest = std::max(heaviest, r->weight);
      }
      if (heaviest * (1 + eps_) > total * eps_) continue;
      Fired f{round, ctx_.id, {}};
      for (const Report* r : members) {
        out.send(r->from, join);
        f.batch.push_back(r->from);
      }
      fired.push_back(std::move(f));
    }
  }
  void receive(std::size_t round, const Inbox& in) {
    const Vertex c = static_cast<Vertex>((round - 1) / 2);
    if ((round - 1) % 2 == 0) {
      if (c == ctx_.id) {
        for (const Message& m : in) {
          Reader r(m.words);
          Report rep;
          rep.from = m.from;
          rep.in_r = r.get() != 0;
          auto num = static_cast<std::int64_t>(r.get_wide(words_, ctx_.word_bits));
          auto den = static_cast<std::int64_t>(r.get_wide(words_, ctx_.word_bits));
          rep.weight = Rational(num, den);
          reports_.push_back(rep);
        }
      }
    } else if (!in.empty()) {
      in_r = false;
    }
    if (round >= 2 * ctx_.n) done_ = true;
  }
  bool halted() const { return done_; }
  bool idle() const { return false; }

 private:
  struct Report {
    Vertex from = 0;
    bool in_r = false;
    Rational weight;
  };

  NodeContext ctx_;
  Rational weight_;
  Rational eps_;
  std::size_t words_ = 2;
  std::vector<Report> reports_;
  bool done_ = false;
};

void append_wide(Item& item, std::uint64_t value, std::size_t words, std::size_t word_bits) {
  Payload p;
  p.put_wide(value, words, word_bits);
  item.insert(item.end(), p.words().begin(), p.words().end());
}

// Phase II: gather F (and U with weights) at the leader, solve H exactly and
// hand every vertex its membership bit.
MvcRun finish(const Graph& g, const std::vector<char>& in_u, Phase1Trace trace, bool weighted,
              const MvcOptions& options, const HSolver& solve = {}) {
  const std::size_t n = g.n();
  const std::size_t wb = sim::word_bits_for(n);
  const bool clique = options.model.variant == sim::Variant::Clique;

  sim::BfsTree tree;
  sim::RoundStats phase2;
  if (clique) {
    tree.leader = 0;
  } else {
    tree = sim::elect_leader_bfs(g, options.model, options.seed, options.run);
    phase2 += tree.stats;
  }

  std::vector<std::vector<Item>> items(n);
  for (Vertex v = 0; v < n; ++v) {
    if (in_u[v]) {
      Item self{v};
      if (weighted) {
        append_wide(self, static_cast<std::uint64_t>(g.weight(v).numerator()), 2, wb);
        append_wide(self, static_cast<std::uint64_t>(g.weight(v).denominator()), 2, wb);
      }
      items[v].push_back(std::move(self));
    }
    for (Vertex u : g.neighbors(v)) {
      if (in_u[u] && (!in_u[v] || v < u)) items[v].push_back({v, u});
    }
  }
  auto gather = sim::pipelined_convergecast(g, tree, items, options.model, options.run);
  phase2 += gather.stats;

  // Leader-local reconstruction.
  std::vector<Vertex> U;
  std::vector<Edge> F;
  std::map<Vertex, Rational> weights;
  for (const Item& item : gather.gathered) {
    if (item.size() == 2) {
      F.push_back({static_cast<Vertex>(item[0]), static_cast<Vertex>(item[1])});
    } else {
      U.push_back(static_cast<Vertex>(item[0]));
      if (weighted) {
        Reader r(std::span<const Word>(item).subspan(1));
        auto num = static_cast<std::int64_t>(r.get_wide(2, wb));
        auto den = static_cast<std::int64_t>(r.get_wide(2, wb));
        weights[U.back()] = Rational(num, den);
      }
    }
  }
  std::sort(U.begin(), U.end());
  InducedGraph H = build_H_from_F(F, U);
  if (weighted) {
    std::vector<Rational> w;
    for (Vertex v : H.label) w.push_back(weights.at(v));
    H.graph.set_weights(std::move(w));
  }
  std::vector<Vertex> inner_members;
  if (solve) {
    std::vector<Edge> red;
    for (auto [a, b] : F) {
      auto ia = std::lower_bound(H.label.begin(), H.label.end(), a);
      auto ib = std::lower_bound(H.label.begin(), H.label.end(), b);
      if (ia != H.label.end() && *ia == a && ib != H.label.end() && *ib == b) {
        red.push_back({static_cast<Vertex>(ia - H.label.begin()), static_cast<Vertex>(ib - H.label.begin())});
      }
    }
    inner_members = solve(H, red);
  } else {
    inner_members = exact_mvc(H.graph, options.exact).members;
  }

  std::vector<char> chosen(n, 0);
  if (clique) {
    std::vector<Item> per(n);
    for (Vertex i : inner_members) per[H.label[i]] = {1};
    auto dist = sim::direct_distribute(g, tree.leader, per, options.model, options.run);
    phase2 += dist.stats;
    for (Vertex v = 0; v < n; ++v) chosen[v] = !dist.received[v].empty();
  } else {
    std::vector<Item> ids;
    for (Vertex i : inner_members) ids.push_back({H.label[i]});
    auto down = sim::tree_broadcast(g, tree, ids, options.model, options.run);
    phase2 += down.stats;
    for (Vertex v = 0; v < n; ++v) {
      for (const Item& it : down.received[v]) {
        if (it[0] == v) chosen[v] = 1;
      }
    }
  }

  std::vector<Vertex> members;
  for (Vertex v = 0; v < n; ++v) {
    if (!in_u[v] || chosen[v]) members.push_back(v);
  }
  MvcRun out;
  out.solution = make_solution(g, ProblemKind::VC2, std::move(members));
  trace.U = std::move(U);
  trace.f_edges = F.size();
  trace.phase2 = phase2;
  out.stats = trace.phase1;
  out.stats += phase2;
  out.trace = std::move(trace);
  return out;
}

void require_connected(const Graph& g) {
  if (g.n() == 0 || !is_connected(g)) fail(ErrorKind::Connectivity, "input graph must be connected");
}

template <typename Node>
void collect_batches(const std::vector<Node>& nodes, Phase1Trace& trace) {
  std::vector<const Fired*> all;
  for (const auto& node : nodes) {
    if (node.fired) all.push_back(&*node.fired);
  }
  std::sort(all.begin(), all.end(), [](const Fired* a, const Fired* b) {
    return std::tie(a->round, a->center) < std::tie(b->round, b->center);
  });
  for (const Fired* f : all) {
    trace.batches.push_back(f->batch);
    trace.centers.push_back(f->center);
  }
}

}  // namespace

InducedGraph build_H_from_F(std::span<const Edge> F, std::span<const Vertex> U) {
  InducedGraph out;
  out.label.assign(U.begin(), U.end());
  std::sort(out.label.begin(), out.label.end());
  out.label.erase(std::unique(out.label.begin(), out.label.end()), out.label.end());
  auto index = [&](Vertex v) -> std::optional<Vertex> {
    auto it = std::lower_bound(out.label.begin(), out.label.end(), v);
    if (it == out.label.end() || *it != v) return std::nullopt;
    return static_cast<Vertex>(it - out.label.begin());
  };
  // U-neighbors of every vertex touched by F.
  std::map<Vertex, std::vector<Vertex>> u_nbrs;
  std::vector<Edge> edges;
  for (auto [a, b] : F) {
    auto ia = index(a), ib = index(b);
    if (ia && ib) edges.push_back({*ia, *ib});
    if (ib) u_nbrs[a].push_back(*ib);
    if (ia) u_nbrs[b].push_back(*ia);
  }
  for (auto& [w, list] : u_nbrs) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (std::size_t j = i + 1; j < list.size(); ++j) edges.push_back({list[i], list[j]});
    }
  }
  out.graph = Graph::from_edges(out.label.size(), edges, true);
  return out;
}

Rational effective_epsilon(const Rational& eps) {
  if (eps <= 0) fail(ErrorKind::Domain, "epsilon must be positive, got " + format_rational(eps));
  std::int64_t l = ceil_div(eps.denominator(), eps.numerator());
  return Rational(1, l);
}

int weight_class(const Rational& w, const Rational& w_min) {
  if (w_min <= 0 || w < w_min) fail(ErrorKind::Domain, "weight below the class base");
  int i = 0;
  Rational lo = w_min;
  while (w >= lo * 2) {
    lo *= 2;
    ++i;
  }
  return i;
}

MvcRun g2mvc_eps(const Graph& g, const Rational& eps, const MvcOptions& options) {
  effective_epsilon(eps);
  require_connected(g);
  if (eps > 1) {
    std::vector<Vertex> all(g.n());
    for (Vertex v = 0; v < g.n(); ++v) all[v] = v;
    MvcRun out;
    out.solution = make_solution(g, ProblemKind::VC2, std::move(all));
    return out;
  }
  return g2mvc_eps_with(g, eps, {}, options);
}

MvcRun g2mvc_eps_with(const Graph& g, const Rational& eps, const HSolver& solve,
                      const MvcOptions& options) {
  const Rational eps1 = effective_epsilon(eps);
  require_connected(g);
  const auto l = static_cast<std::size_t>(eps1.denominator());
  auto res = sim::run(g, [&](NodeContext ctx) { return MaxIdPhase1(std::move(ctx), l); },
                      options.model, options.seed, options.run);
  Phase1Trace trace;
  trace.phase1 = res.stats;
  trace.iterations = (res.stats.rounds + 3) / 4;
  collect_batches(res.nodes, trace);
  std::vector<char> in_u(g.n());
  for (Vertex v = 0; v < g.n(); ++v) in_u[v] = res.nodes[v].in_r;
  return finish(g, in_u, std::move(trace), false, options, solve);
}

MvcRun g2mvc_weighted(const Graph& g, const Rational& eps, const MvcOptions& options) {
  if (eps <= 0) fail(ErrorKind::Domain, "epsilon must be positive, got " + format_rational(eps));
  require_connected(g);
  auto res = sim::run(
      g, [&](NodeContext ctx) { Rational w = g.weight(ctx.id); return WeightedScan(std::move(ctx), w, eps); },
      options.model, options.seed, options.run);
  Phase1Trace trace;
  trace.phase1 = res.stats;
  trace.iterations = g.n();
  std::vector<const Fired*> all;
  for (const auto& node : res.nodes) {
    for (const Fired& f : node.fired) all.push_back(&f);
  }
  std::stable_sort(all.begin(), all.end(), [](const Fired* a, const Fired* b) { return a->round < b->round; });
  for (const Fired* f : all) {
    trace.batches.push_back(f->batch);
    trace.centers.push_back(f->center);
  }
  std::vector<char> in_u(g.n());
  for (Vertex v = 0; v < g.n(); ++v) {
    in_u[v] = res.nodes[v].in_r;
    if (g.weight(v).numerator() == 0) trace.free_vertices.push_back(v);
  }
  return finish(g, in_u, std::move(trace), true, options);
}

Solution g2mvc_trivial(const Graph& g, unsigned r) {
  if (r < 1) fail(ErrorKind::Domain, "power must be at least 1");
  std::vector<Vertex> all(g.n());
  for (Vertex v = 0; v < g.n(); ++v) all[v] = v;
  return make_solution(g, ProblemKind::VC2, std::move(all));
}

MvcRun g2mvc_cc_voting(const Graph& g, const Rational& eps, const MvcOptions& options) {
  const Rational eps1 = effective_epsilon(eps);
  if (g.n() == 0) fail(ErrorKind::Connectivity, "input graph must be nonempty");
  MvcOptions opts = options;
  opts.model.variant = sim::Variant::Clique;
  const std::size_t threshold = 8 * static_cast<std::size_t>(eps1.denominator()) + 2;
  auto res = sim::run(g, [&](NodeContext ctx) { return VotingPhase1(std::move(ctx), threshold); },
                      opts.model, opts.seed, opts.run);
  Phase1Trace trace;
  trace.phase1 = res.stats;
  trace.iterations = (res.stats.rounds + 3) / 4;
  collect_batches(res.nodes, trace);
  std::vector<char> in_u(g.n());
  for (Vertex v = 0; v < g.n(); ++v) in_u[v] = res.nodes[v].in_r;
  return finish(g, in_u, std::move(trace), false, opts);
}

}  // namespace powergraph
