#include "powergraph/lowerbound.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <functional>
#include <utility>

#include "powergraph/errors.hpp"
#include "powergraph/random.hpp"

namespace powergraph {

namespace {

constexpr std::array<std::pair<Family, const char*>, 7> kFamilies{{
    {Family::MvcBase, "mvc-base"},
    {Family::MvcSquare, "mvc-sq"},
    {Family::MwvcSquare, "mwvc-sq"},
    {Family::MdsBase, "mds-base"},
    {Family::MdsSquareExact, "mds-sq-exact"},
    {Family::MwdsSquareApprox, "mwds-sq-approx"},
    {Family::MdsSquareApprox, "mds-sq-approx"},
}};

Edge ordered(Vertex u, Vertex v) { return u < v ? Edge{u, v} : Edge{v, u}; }

std::string indexed(std::string_view base, std::size_t i) {
  return std::string(base) + "[" + std::to_string(i) + "]";
}

std::size_t log2_exact(std::size_t k) {
  if (k < 2 || !std::has_single_bit(k)) fail(ErrorKind::Domain, "k must be a power of two, at least 2");
  return static_cast<std::size_t>(std::countr_zero(k));
}

void check_bits(const Bits& x, const Bits& y, std::size_t len) {
  if (x.size() != len || y.size() != len) {
    fail(ErrorKind::Input, "x and y must have " + std::to_string(len) + " bits");
  }
}

bool bit_at(const Bits& b, std::size_t side, std::size_t i, std::size_t j) {
  return b[(i - 1) * side + (j - 1)] != 0;
}

// Accumulates a labelled graph with a two-sided vertex partition.
struct Builder {
  std::vector<std::string> names;
  std::vector<char> alice;
  std::vector<Rational> weights;
  std::vector<Edge> edges;
  std::vector<Edge> x_edges, y_edges;
  std::vector<Gadget> gadgets;

  Vertex add(std::string name, bool on_alice, Rational w = Rational(1)) {
    names.push_back(std::move(name));
    alice.push_back(on_alice ? 1 : 0);
    weights.push_back(w);
    return static_cast<Vertex>(names.size() - 1);
  }
  void link(Vertex u, Vertex v) { edges.push_back(ordered(u, v)); }

  // Path of `len` vertices named base[1..len]; returns their ids.
  std::vector<Vertex> path(const std::string& base, std::size_t len, bool on_alice) {
    std::vector<Vertex> p;
    for (std::size_t i = 1; i <= len; ++i) {
      p.push_back(add(indexed(base, i), on_alice));
      if (i > 1) link(p[i - 2], p[i - 1]);
    }
    return p;
  }

  // Gadget replacing edge {u, v}; it sits with Alice only if both ends do.
  Gadget dangling(Vertex u, Vertex v, std::size_t len) {
    const bool side = alice[u] && alice[v];
    Gadget gd;
    gd.kind = len == 3 ? GadgetKind::Path3 : GadgetKind::Path5;
    gd.path = path("DP(" + names[u] + "," + names[v] + ")", len, side);
    gd.attach = {u, v};
    link(gd.path[0], u);
    link(gd.path[0], v);
    return gd;
  }

  Gadget shared(Vertex row, std::size_t len, const std::string& base) {
    Gadget gd;
    gd.kind = len == 3 ? GadgetKind::Path3 : GadgetKind::Path5;
    gd.shared = true;
    gd.path = path(base, len, alice[row]);
    gd.attach = {row};
    link(gd.path[0], row);
    return gd;
  }
};

enum class Tag { Fixed, Bit, X, Y };

struct TaggedEdge {
  Vertex u, v;
  Tag tag;
};

// Bit-gadget base graph before any square transform.
struct Base {
  Builder b;
  std::array<std::vector<Vertex>, 4> rows;  // A1, A2, B1, B2
  std::vector<TaggedEdge> tagged;
  std::vector<std::pair<std::size_t, std::size_t>> x_pairs, y_pairs;  // 1-based (i, j)
};

constexpr std::array<const char*, 4> kRowNames{"a1", "a2", "b1", "b2"};

void add_rows(Base& base, std::size_t k) {
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t i = 1; i <= k; ++i) base.rows[r].push_back(base.b.add(indexed(kRowNames[r], i), r < 2));
  }
}

void add_variable_pairs(Base& base, std::size_t k, const Bits& x, const Bits& y, bool edge_on) {
  for (std::size_t i = 1; i <= k; ++i) {
    for (std::size_t j = 1; j <= k; ++j) {
      if (bit_at(x, k, i, j) == edge_on) {
        base.x_pairs.emplace_back(i, j);
        base.tagged.push_back({base.rows[0][i - 1], base.rows[1][j - 1], Tag::X});
      }
      if (bit_at(y, k, i, j) == edge_on) {
        base.y_pairs.emplace_back(i, j);
        base.tagged.push_back({base.rows[2][i - 1], base.rows[3][j - 1], Tag::Y});
      }
    }
  }
}

// Row pair s uses rows s (A side) and 2 + s (B side).
Base mvc_base(std::size_t k, const Bits& x, const Bits& y) {
  const std::size_t L = log2_exact(k);
  check_bits(x, y, k * k);
  Base base;
  add_rows(base, k);
  for (const auto& row : base.rows) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) base.tagged.push_back({row[i], row[j], Tag::Fixed});
    }
  }
  for (std::size_t s = 0; s < 2; ++s) {
    const std::string id = std::to_string(s + 1);
    for (std::size_t j = 1; j <= L; ++j) {
      Vertex tA = base.b.add(indexed("tA" + id, j), true);
      Vertex fA = base.b.add(indexed("fA" + id, j), true);
      Vertex tB = base.b.add(indexed("tB" + id, j), false);
      Vertex fB = base.b.add(indexed("fB" + id, j), false);
      for (auto [u, v] : {Edge{tA, fA}, Edge{fA, tB}, Edge{tB, fB}, Edge{fB, tA}}) {
        base.tagged.push_back({u, v, Tag::Bit});
      }
      for (std::size_t i = 1; i <= k; ++i) {
        const bool one = ((i - 1) >> (j - 1)) & 1;
        base.tagged.push_back({base.rows[s][i - 1], one ? tA : fA, Tag::Bit});
        base.tagged.push_back({base.rows[2 + s][i - 1], one ? tB : fB, Tag::Bit});
      }
    }
  }
  add_variable_pairs(base, k, x, y, false);
  return base;
}

Base mds_base(std::size_t k, const Bits& x, const Bits& y) {
  const std::size_t L = log2_exact(k);
  check_bits(x, y, k * k);
  Base base;
  add_rows(base, k);
  for (std::size_t s = 0; s < 2; ++s) {
    const std::string id = std::to_string(s + 1);
    for (std::size_t j = 1; j <= L; ++j) {
      Vertex fA = base.b.add(indexed("fA" + id, j), true);
      Vertex tA = base.b.add(indexed("tA" + id, j), true);
      Vertex uA = base.b.add(indexed("uA" + id, j), true);
      Vertex fB = base.b.add(indexed("fB" + id, j), false);
      Vertex tB = base.b.add(indexed("tB" + id, j), false);
      Vertex uB = base.b.add(indexed("uB" + id, j), false);
      const std::array<Vertex, 6> ring{fA, tA, uA, fB, tB, uB};
      for (std::size_t c = 0; c < 6; ++c) base.tagged.push_back({ring[c], ring[(c + 1) % 6], Tag::Bit});
      for (std::size_t i = 1; i <= k; ++i) {
        const bool one = ((i - 1) >> (j - 1)) & 1;
        base.tagged.push_back({base.rows[s][i - 1], one ? fA : tA, Tag::Bit});
        base.tagged.push_back({base.rows[2 + s][i - 1], one ? fB : tB, Tag::Bit});
      }
    }
  }
  add_variable_pairs(base, k, x, y, true);
  return base;
}

LowerBoundInstance finish(Builder&& b, Family family, LowerBoundParams params, const Bits& x, const Bits& y,
                          ProblemKind problem, bool weighted) {
  LowerBoundInstance inst;
  inst.family = family;
  inst.params = params;
  inst.x = x;
  inst.y = y;
  inst.problem = problem;
  inst.graph = Graph::from_edges(b.names.size(), b.edges);
  if (weighted) inst.graph.set_weights(b.weights);
  inst.names = std::move(b.names);
  inst.alice = std::move(b.alice);
  for (auto [u, v] : inst.graph.edges()) {
    if (inst.alice[u] != inst.alice[v]) inst.cut.emplace_back(u, v);
  }
  inst.x_edges = std::move(b.x_edges);
  inst.y_edges = std::move(b.y_edges);
  std::sort(inst.x_edges.begin(), inst.x_edges.end());
  std::sort(inst.y_edges.begin(), inst.y_edges.end());
  inst.gadgets = std::move(b.gadgets);
  return inst;
}

Rational mvc_threshold(std::size_t k) {
  const std::size_t L = log2_exact(k);
  return Rational(static_cast<std::int64_t>(4 * (k - 1) + 4 * L));
}

Rational mds_threshold(std::size_t k) {
  return Rational(static_cast<std::int64_t>(4 * log2_exact(k) + 2));
}

std::size_t bit_cut_cap(std::size_t k) { return 4 * log2_exact(k); }

}  // namespace

const char* to_string(Family family) {
  for (auto [f, name] : kFamilies) {
    if (f == family) return name;
  }
  return "?";
}

Family parse_family(std::string_view tag) {
  for (auto [f, name] : kFamilies) {
    if (tag == name) return f;
  }
  fail(ErrorKind::Parse, "unknown family '" + std::string(tag) + "'");
}

const char* to_string(GadgetKind kind) {
  switch (kind) {
    case GadgetKind::Point:
      return "point";
    case GadgetKind::Path3:
      return "path3";
    case GadgetKind::Path5:
      return "path5";
    case GadgetKind::Merged:
      return "merged";
  }
  return "?";
}

Bits parse_bits(std::string_view text, std::size_t length) {
  if (text.starts_with("0x") || text.starts_with("0X")) text.remove_prefix(2);
  if (text.empty()) fail(ErrorKind::Parse, "empty bit string");
  Bits bits(length, 0);
  std::size_t pos = 0;
  for (auto it = text.rbegin(); it != text.rend(); ++it, pos += 4) {
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(*it)));
    int digit;
    if (c >= '0' && c <= '9') {
      digit = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      digit = c - 'a' + 10;
    } else {
      fail(ErrorKind::Parse, "bad hex digit '" + std::string(1, *it) + "'");
    }
    for (int b = 0; b < 4; ++b) {
      if (!((digit >> b) & 1)) continue;
      if (pos + b >= length) {
        fail(ErrorKind::Input, "bit " + std::to_string(pos + b) + " set beyond length " + std::to_string(length));
      }
      bits[pos + b] = 1;
    }
  }
  return bits;
}

std::string format_bits(const Bits& bits) {
  std::string out;
  for (std::size_t pos = 0; pos < bits.size(); pos += 4) {
    int digit = 0;
    for (std::size_t b = 0; b < 4 && pos + b < bits.size(); ++b) digit |= (bits[pos + b] ? 1 : 0) << b;
    out.push_back("0123456789abcdef"[digit]);
  }
  while (out.size() > 1 && out.back() == '0') out.pop_back();
  if (out.empty()) out = "0";
  std::reverse(out.begin(), out.end());
  return "0x" + out;
}

bool disjoint(const Bits& x, const Bits& y) {
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] && y[i]) return false;
  }
  return true;
}

bool has_covering_property(const SetSystem& s) {
  const std::uint64_t full = s.ell == 64 ? ~0ULL : (1ULL << s.ell) - 1;
  const std::size_t m = std::min(s.r, s.T);
  std::vector<std::size_t> idx(m);
  // Enumerate index subsets of size m in lexicographic order.
  std::function<bool(std::size_t, std::size_t)> choose = [&](std::size_t depth, std::size_t from) {
    if (depth == m) {
      for (std::uint64_t orient = 0; orient < (1ULL << m); ++orient) {
        std::uint64_t cover = 0;
        for (std::size_t d = 0; d < m; ++d) {
          const std::uint64_t set = s.sets[idx[d]];
          cover |= ((orient >> d) & 1) ? (~set & full) : set;
        }
        if (cover == full) return false;
      }
      return true;
    }
    for (std::size_t i = from; i < s.T; ++i) {
      idx[depth] = i;
      if (!choose(depth + 1, i + 1)) return false;
    }
    return true;
  };
  return choose(0, 0);
}

SetSystem gen_set_system(std::size_t ell, std::size_t T, std::size_t r, std::uint64_t seed,
                         std::size_t max_tries) {
  if (ell == 0 || ell > 64) fail(ErrorKind::Domain, "set system universe must have 1..64 elements");
  if (T == 0 || r == 0) fail(ErrorKind::Domain, "set system needs T >= 1 and r >= 1");
  const std::uint64_t full = ell == 64 ? ~0ULL : (1ULL << ell) - 1;
  SetSystem s{ell, T, r, std::vector<std::uint64_t>(T)};
  for (std::size_t attempt = 0; attempt < max_tries; ++attempt) {
    auto rng = make_stream(seed, attempt);
    for (auto& set : s.sets) set = rng() & full;
    if (has_covering_property(s)) return s;
  }
  fail(ErrorKind::Generation, "no " + std::to_string(r) + "-covering system of " + std::to_string(T) +
                                  " sets over " + std::to_string(ell) + " elements after " +
                                  std::to_string(max_tries) + " tries");
}

LowerBoundInstance gen_mvc_base(std::size_t k, const Bits& x, const Bits& y) {
  Base base = mvc_base(k, x, y);
  for (const auto& e : base.tagged) {
    base.b.link(e.u, e.v);
    if (e.tag == Tag::X) base.b.x_edges.push_back(ordered(e.u, e.v));
    if (e.tag == Tag::Y) base.b.y_edges.push_back(ordered(e.u, e.v));
  }
  auto inst = finish(std::move(base.b), Family::MvcBase, {.k = k}, x, y, ProblemKind::VC1, false);
  inst.yes_at_most = mvc_threshold(k);
  inst.no_at_least = inst.yes_at_most + 1;
  inst.cut_cap = bit_cut_cap(k);
  return inst;
}

LowerBoundInstance gen_mwvc_square(std::size_t k, const Bits& x, const Bits& y) {
  Base base = mvc_base(k, x, y);
  Builder& b = base.b;
  for (const auto& e : base.tagged) {
    if (e.tag == Tag::Fixed) {
      b.link(e.u, e.v);
    } else if (e.tag == Tag::Bit) {
      Gadget gd;
      gd.kind = GadgetKind::Point;
      gd.path = {b.add("p(" + b.names[e.u] + "," + b.names[e.v] + ")", b.alice[e.u] && b.alice[e.v], Rational(0))};
      gd.attach = {e.u, e.v};
      b.link(gd.path[0], e.u);
      b.link(gd.path[0], e.v);
      b.gadgets.push_back(std::move(gd));
    }
  }
  for (std::size_t side = 0; side < 2; ++side) {
    const auto& from = base.rows[2 * side];
    const auto& to = base.rows[2 * side + 1];
    const auto& pairs = side == 0 ? base.x_pairs : base.y_pairs;
    auto& out = side == 0 ? b.x_edges : b.y_edges;
    std::vector<Vertex> hub;
    for (std::size_t i = 1; i <= k; ++i) {
      Gadget gd;
      gd.kind = GadgetKind::Point;
      gd.shared = true;
      gd.path = {b.add(indexed(side == 0 ? "pa" : "pb", i), side == 0, Rational(0))};
      gd.attach = {from[i - 1]};
      b.link(gd.path[0], from[i - 1]);
      hub.push_back(gd.path[0]);
      b.gadgets.push_back(std::move(gd));
    }
    for (auto [i, j] : pairs) {
      b.link(hub[i - 1], to[j - 1]);
      out.push_back(ordered(hub[i - 1], to[j - 1]));
    }
  }
  auto inst = finish(std::move(b), Family::MwvcSquare, {.k = k}, x, y, ProblemKind::VC2, true);
  inst.yes_at_most = mvc_threshold(k);
  inst.no_at_least = inst.yes_at_most + 1;
  inst.cut_cap = bit_cut_cap(k);
  return inst;
}

LowerBoundInstance gen_mvc_square(std::size_t k, const Bits& x, const Bits& y) {
  Base base = mvc_base(k, x, y);
  Builder& b = base.b;
  for (const auto& e : base.tagged) {
    if (e.tag == Tag::Fixed) b.link(e.u, e.v);
    if (e.tag == Tag::Bit) b.gadgets.push_back(b.dangling(e.u, e.v, 3));
  }
  for (std::size_t side = 0; side < 2; ++side) {
    const auto& from = base.rows[2 * side];
    const auto& to = base.rows[2 * side + 1];
    const auto& pairs = side == 0 ? base.x_pairs : base.y_pairs;
    auto& out = side == 0 ? b.x_edges : b.y_edges;
    std::vector<Vertex> head;
    for (std::size_t i = 1; i <= k; ++i) {
      b.gadgets.push_back(b.shared(from[i - 1], 3, indexed(side == 0 ? "A1" : "B1", i)));
      head.push_back(b.gadgets.back().path[0]);
    }
    for (auto [i, j] : pairs) {
      b.link(head[i - 1], to[j - 1]);
      out.push_back(ordered(head[i - 1], to[j - 1]));
    }
  }
  const auto count = static_cast<std::int64_t>(b.gadgets.size());
  auto inst = finish(std::move(b), Family::MvcSquare, {.k = k}, x, y, ProblemKind::VC2, false);
  inst.yes_at_most = mvc_threshold(k) + 2 * count;
  inst.no_at_least = inst.yes_at_most + 1;
  inst.cut_cap = bit_cut_cap(k);
  return inst;
}

LowerBoundInstance gen_mds_base(std::size_t k, const Bits& x, const Bits& y) {
  Base base = mds_base(k, x, y);
  for (const auto& e : base.tagged) {
    base.b.link(e.u, e.v);
    if (e.tag == Tag::X) base.b.x_edges.push_back(ordered(e.u, e.v));
    if (e.tag == Tag::Y) base.b.y_edges.push_back(ordered(e.u, e.v));
  }
  auto inst = finish(std::move(base.b), Family::MdsBase, {.k = k}, x, y, ProblemKind::DS1, false);
  inst.yes_at_most = mds_threshold(k);
  inst.no_at_least = inst.yes_at_most + 1;
  inst.cut_cap = bit_cut_cap(k);
  return inst;
}

LowerBoundInstance gen_mds_square_exact(std::size_t k, const Bits& x, const Bits& y) {
  Base base = mds_base(k, x, y);
  Builder& b = base.b;
  for (const auto& e : base.tagged) {
    if (e.tag == Tag::Bit) b.gadgets.push_back(b.dangling(e.u, e.v, 5));
  }
  constexpr std::array<const char*, 4> kShared{"A1", "A2", "B1", "B2"};
  std::array<std::vector<Vertex>, 4> head;
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t i = 1; i <= k; ++i) {
      b.gadgets.push_back(b.shared(base.rows[r][i - 1], 5, indexed(kShared[r], i)));
      head[r].push_back(b.gadgets.back().path[0]);
    }
  }
  for (auto [i, j] : base.x_pairs) {
    b.link(head[0][i - 1], head[1][j - 1]);
    b.x_edges.push_back(ordered(head[0][i - 1], head[1][j - 1]));
  }
  for (auto [i, j] : base.y_pairs) {
    b.link(head[2][i - 1], head[3][j - 1]);
    b.y_edges.push_back(ordered(head[2][i - 1], head[3][j - 1]));
  }
  const auto count = static_cast<std::int64_t>(b.gadgets.size());
  auto inst = finish(std::move(b), Family::MdsSquareExact, {.k = k}, x, y, ProblemKind::DS2, false);
  inst.yes_at_most = mds_threshold(k) + count;
  inst.no_at_least = inst.yes_at_most + 1;
  inst.cut_cap = bit_cut_cap(k);
  return inst;
}

namespace {

LowerBoundInstance set_gadget_family(std::size_t T, std::size_t ell, std::size_t r, const Bits& x,
                                     const Bits& y, std::uint64_t seed, bool weighted) {
  if (T == 0) fail(ErrorKind::Domain, "T must be at least 1");
  check_bits(x, y, T * T);
  SetSystem sys = gen_set_system(ell, T, r, seed);
  const Rational heavy = weighted ? Rational(static_cast<std::int64_t>(r)) : Rational(1);
  Builder b;

  // Rows a, a' (Alice) and b, b' (Bob).
  auto row = [&](const char* name, bool side) {
    std::vector<Vertex> out;
    for (std::size_t i = 1; i <= T; ++i) out.push_back(b.add(indexed(name, i), side));
    return out;
  };
  const auto a = row("a", true), a2 = row("a'", true), bb = row("b", false), b2 = row("b'", false);

  // Set gadget copies; S and alpha with Alice, complements and beta with Bob.
  struct SetGadget {
    std::vector<Vertex> S, Sbar;
  };
  auto set_gadget = [&](const std::string& mark) {
    SetGadget sg;
    for (std::size_t j = 1; j <= T; ++j) sg.S.push_back(b.add(indexed("S" + mark, j), true));
    for (std::size_t j = 1; j <= T; ++j) sg.Sbar.push_back(b.add(indexed("Sbar" + mark, j), false));
    for (std::size_t e = 1; e <= ell; ++e) {
      Vertex al = b.add(indexed("alpha" + mark, e), true, heavy);
      Vertex be = b.add(indexed("beta" + mark, e), false, heavy);
      b.link(al, be);
      for (std::size_t j = 0; j < T; ++j) {
        if ((sys.sets[j] >> (e - 1)) & 1) {
          b.link(sg.S[j], al);
        } else {
          b.link(sg.Sbar[j], be);
        }
      }
    }
    if (weighted) {
      Vertex al = b.add("alpha" + mark, true, heavy);
      Vertex be = b.add("beta" + mark, false, heavy);
      for (std::size_t j = 0; j < T; ++j) {
        b.link(al, sg.S[j]);
        b.link(be, sg.Sbar[j]);
      }
    }
    return sg;
  };
  const SetGadget g1 = set_gadget(""), g2 = set_gadget("'");

  // Merged gadget per side; branch heads hang off row vertices.
  auto merged = [&](const std::string& name, bool side) {
    Gadget gd;
    gd.kind = GadgetKind::Merged;
    gd.shared = true;
    gd.path = {b.add(indexed(name, 3), side, weighted ? Rational(0) : Rational(1)), b.add(indexed(name, 4), side),
               b.add(indexed(name, 5), side)};
    b.link(gd.path[0], gd.path[1]);
    b.link(gd.path[1], gd.path[2]);
    return gd;
  };
  auto branch = [&](Gadget& gd, const std::string& name, Vertex at) {
    Vertex h = b.add(indexed(name, 1), b.alice[at]);
    Vertex t = b.add(indexed(name, 2), b.alice[at]);
    b.link(h, at);
    b.link(h, t);
    b.link(t, gd.path[0]);
    gd.branches.push_back({h, t, at});
    return h;
  };
  auto wire_side = [&](const std::string& star, const std::vector<Vertex>& r1, const std::vector<Vertex>& r2,
                       const std::vector<Vertex>& sets1, const std::vector<Vertex>& sets2, const Bits& bits,
                       const std::string& p1, const std::string& p2, const std::string& ps1,
                       const std::string& ps2, std::vector<Edge>& out) {
    Gadget gd = merged(star, b.alice[r1[0]]);
    std::vector<Vertex> h1, h2;
    for (std::size_t i = 1; i <= T; ++i) {
      h1.push_back(branch(gd, indexed(p1, i), r1[i - 1]));
      Vertex hs = branch(gd, indexed(ps1, i), r1[i - 1]);
      for (std::size_t j = 1; j <= T; ++j) {
        if (j != i) b.link(hs, sets1[j - 1]);
      }
    }
    for (std::size_t i = 1; i <= T; ++i) {
      h2.push_back(branch(gd, indexed(p2, i), r2[i - 1]));
      Vertex hs = branch(gd, indexed(ps2, i), r2[i - 1]);
      for (std::size_t j = 1; j <= T; ++j) {
        if (j != i) b.link(hs, sets2[j - 1]);
      }
    }
    for (std::size_t i = 1; i <= T; ++i) {
      for (std::size_t j = 1; j <= T; ++j) {
        if (bit_at(bits, T, i, j)) {
          b.link(h1[i - 1], h2[j - 1]);
          out.push_back(ordered(h1[i - 1], h2[j - 1]));
        }
      }
    }
    const Vertex hub = gd.path[0];
    b.gadgets.push_back(std::move(gd));
    return hub;
  };
  const Vertex a_hub = wire_side("A*", a, a2, g1.S, g2.S, x, "Aa", "Aa'", "AS", "AS'", b.x_edges);
  const Vertex b_hub = wire_side("B*", bb, b2, g1.Sbar, g2.Sbar, y, "Bb", "Bb'", "BSbar", "BSbar'", b.y_edges);

  if (!weighted) {
    auto attach_q = [&](const std::vector<Vertex>& sets, const std::string& name, Vertex hub) {
      for (std::size_t j = 1; j <= T; ++j) {
        Vertex q = b.add(indexed(name, j), b.alice[hub]);
        b.link(q, sets[j - 1]);
        b.link(q, hub);
      }
    };
    attach_q(g1.S, "q", a_hub);
    attach_q(g2.S, "q'", a_hub);
    attach_q(g1.Sbar, "qbar", b_hub);
    attach_q(g2.Sbar, "qbar'", b_hub);
  }

  LowerBoundParams params{.T = T, .ell = ell, .r = r, .seed = seed};
  auto inst = finish(std::move(b), weighted ? Family::MwdsSquareApprox : Family::MdsSquareApprox, params, x, y,
                     ProblemKind::DS2, weighted);
  inst.yes_at_most = Rational(weighted ? 6 : 8);
  inst.no_at_least = Rational(weighted ? 7 : 9);
  inst.cut_cap = 2 * ell;
  inst.sets = std::move(sys);
  return inst;
}

}  // namespace

LowerBoundInstance gen_mwds_square_approx(std::size_t T, std::size_t ell, std::size_t r, const Bits& x,
                                          const Bits& y, std::uint64_t seed) {
  return set_gadget_family(T, ell, r, x, y, seed, true);
}

LowerBoundInstance gen_mds_square_approx_unweighted(std::size_t T, std::size_t ell, std::size_t r,
                                                    const Bits& x, const Bits& y, std::uint64_t seed) {
  return set_gadget_family(T, ell, r, x, y, seed, false);
}

std::size_t input_length(Family family, const LowerBoundParams& p) {
  switch (family) {
    case Family::MwdsSquareApprox:
    case Family::MdsSquareApprox:
      return p.T * p.T;
    default:
      return p.k * p.k;
  }
}

LowerBoundInstance generate(Family family, const LowerBoundParams& p, const Bits& x, const Bits& y) {
  switch (family) {
    case Family::MvcBase:
      return gen_mvc_base(p.k, x, y);
    case Family::MvcSquare:
      return gen_mvc_square(p.k, x, y);
    case Family::MwvcSquare:
      return gen_mwvc_square(p.k, x, y);
    case Family::MdsBase:
      return gen_mds_base(p.k, x, y);
    case Family::MdsSquareExact:
      return gen_mds_square_exact(p.k, x, y);
    case Family::MwdsSquareApprox:
      return gen_mwds_square_approx(p.T, p.ell, p.r, x, y, p.seed);
    case Family::MdsSquareApprox:
      return gen_mds_square_approx_unweighted(p.T, p.ell, p.r, x, y, p.seed);
  }
  fail(ErrorKind::Domain, "unknown family");
}

TransformResult dangling_transform(const Graph& g, std::size_t length, bool delete_original) {
  if (length != 3 && length != 5) fail(ErrorKind::Domain, "dangling path length must be 3 or 5");
  const auto edges = g.edges();
  std::vector<Edge> out;
  TransformResult res;
  Vertex next = static_cast<Vertex>(g.n());
  for (auto [u, v] : edges) {
    if (!delete_original) out.emplace_back(u, v);
    Gadget gd;
    gd.kind = length == 3 ? GadgetKind::Path3 : GadgetKind::Path5;
    gd.attach = {u, v};
    for (std::size_t i = 0; i < length; ++i) {
      gd.path.push_back(next++);
      if (i > 0) out.emplace_back(gd.path[i - 1], gd.path[i]);
    }
    out.emplace_back(u, gd.path[0]);
    out.emplace_back(v, gd.path[0]);
    res.gadgets.push_back(std::move(gd));
  }
  res.graph = Graph::from_edges(next, out);
  return res;
}

TransformResult merged_dangling_transform(const Graph& g) {
  const auto edges = g.edges();
  if (edges.empty()) fail(ErrorKind::Domain, "merged dangling transform needs at least one edge");
  std::vector<Edge> out;
  Gadget gd;
  gd.kind = GadgetKind::Merged;
  Vertex next = static_cast<Vertex>(g.n());
  for (auto [u, v] : edges) {
    const Vertex h = next++, t = next++;
    out.emplace_back(u, h);
    out.emplace_back(v, h);
    out.emplace_back(h, t);
    gd.branches.push_back({h, t, u});
  }
  gd.path = {next, next + 1, next + 2};
  next += 3;
  for (const auto& br : gd.branches) out.emplace_back(br[1], gd.path[0]);
  out.emplace_back(gd.path[0], gd.path[1]);
  out.emplace_back(gd.path[1], gd.path[2]);
  TransformResult res;
  res.graph = Graph::from_edges(next, out);
  res.gadgets.push_back(std::move(gd));
  return res;
}

namespace {

// Dominating set of a square graph with per-vertex domination counts, so
// single swaps can be tried and undone.
class SquareDomination {
 public:
  SquareDomination(const Graph& h, std::span<const Vertex> members)
      : view_(h), in_(h.n(), 0), count_(h.n(), 0), ball_(h.n()) {
    for (Vertex v : members) add(v);
  }

  bool has(Vertex v) const { return in_[v] != 0; }
  bool feasible() const { return std::find(count_.begin(), count_.end(), 0) == count_.end(); }

  void add(Vertex v) {
    if (in_[v]) return;
    in_[v] = 1;
    for (Vertex w : ball(v)) ++count_[w];
  }
  void remove(Vertex v) {
    if (!in_[v]) return;
    in_[v] = 0;
    for (Vertex w : ball(v)) --count_[w];
  }

  // Drops v; if that leaves something undominated, adds `fix` instead, and
  // if even that fails, restores v.
  void exchange(Vertex v, Vertex fix) {
    if (!in_[v]) return;
    remove(v);
    if (feasible()) return;
    const bool had_fix = in_[fix];
    add(fix);
    if (feasible()) return;
    if (!had_fix) remove(fix);
    add(v);
  }

  std::vector<Vertex> members() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < in_.size(); ++v) {
      if (in_[v]) out.push_back(v);
    }
    return out;
  }

 private:
  const std::vector<Vertex>& ball(Vertex v) {
    if (ball_[v].empty()) ball_[v] = view_.closed_neighborhood(v);
    return ball_[v];
  }

  SquareView view_;
  std::vector<char> in_;
  std::vector<std::size_t> count_;
  std::vector<std::vector<Vertex>> ball_;
};

}  // namespace

std::vector<Vertex> normalize_cover(const Graph& h, std::span<const Gadget> gadgets, ProblemKind kind,
                                    std::span<const Vertex> cover) {
  if (kind != ProblemKind::VC2 && kind != ProblemKind::DS2) {
    fail(ErrorKind::Domain, "normalize_cover handles vc2 and ds2 only");
  }
  if (!is_feasible(h, kind, cover)) fail(ErrorKind::Contract, "cover is not feasible");

  if (kind == ProblemKind::VC2) {
    std::vector<char> in(h.n(), 0);
    for (Vertex v : cover) in[v] = 1;
    for (const auto& gd : gadgets) {
      if (gd.kind == GadgetKind::Point) {
        in[gd.path[0]] = 1;
      } else if (gd.kind == GadgetKind::Path3 && in[gd.path[2]]) {
        // {1, 2, 3} is a triangle of h², so at most one of 1, 2 is missing.
        in[gd.path[2]] = 0;
        in[gd.path[0]] = 1;
        in[gd.path[1]] = 1;
      }
    }
    std::vector<Vertex> out;
    for (Vertex v = 0; v < h.n(); ++v) {
      if (in[v]) out.push_back(v);
    }
    return out;
  }

  SquareDomination ds(h, cover);
  // First every path takes [3] in place of [4] and [5]; [5] forces one of them.
  for (const auto& gd : gadgets) {
    if (gd.kind != GadgetKind::Path5 && gd.kind != GadgetKind::Merged) continue;
    const auto tail = gd.kind == GadgetKind::Path5 ? std::span(gd.path).subspan(2) : std::span(gd.path);
    if (std::none_of(tail.begin(), tail.end(), [&](Vertex v) { return ds.has(v); })) continue;
    ds.add(tail[0]);
    ds.remove(tail[1]);
    ds.remove(tail[2]);
  }
  // With every [3] present, what [1] and [2] add is at most their attach
  // vertices, which one endpoint covers.
  for (const auto& gd : gadgets) {
    if (gd.kind == GadgetKind::Path5) {
      ds.exchange(gd.path[1], gd.attach[0]);
      if (!gd.shared) ds.exchange(gd.path[0], gd.attach[0]);
    } else if (gd.kind == GadgetKind::Merged) {
      for (const auto& br : gd.branches) ds.exchange(br[1], br[2]);
    }
  }
  return ds.members();
}

bool partition_ok(const LowerBoundInstance& inst) {
  const Graph& g = inst.graph;
  if (inst.alice.size() != g.n()) return false;
  std::vector<Edge> crossing;
  for (auto [u, v] : g.edges()) {
    if (inst.alice[u] != inst.alice[v]) crossing.emplace_back(u, v);
  }
  if (crossing != inst.cut || crossing.size() > inst.cut_cap) return false;
  for (auto [u, v] : inst.x_edges) {
    if (!g.has_edge(u, v) || !inst.alice[u] || !inst.alice[v]) return false;
  }
  for (auto [u, v] : inst.y_edges) {
    if (!g.has_edge(u, v) || inst.alice[u] || inst.alice[v]) return false;
  }
  return true;
}

FamilyReport verify_family(const LowerBoundInstance& inst, const ExactOptions& options) {
  FamilyReport rep;
  switch (inst.problem) {
    case ProblemKind::VC1:
      rep.value = exact_mvc(inst.graph, options).value;
      break;
    case ProblemKind::DS1:
      rep.value = exact_mds(inst.graph, options).value;
      break;
    case ProblemKind::VC2:
      rep.value = exact_mvc2(inst.graph, options).value;
      break;
    case ProblemKind::DS2:
      rep.value = exact_mds2(inst.graph, options).value;
      break;
  }
  rep.yes_at_most = inst.yes_at_most;
  rep.no_at_least = inst.no_at_least;
  rep.predicate = rep.value <= inst.yes_at_most;
  rep.disj = disjoint(inst.x, inst.y);
  rep.agree = rep.predicate == !rep.disj && (!rep.disj || rep.value >= inst.no_at_least);
  rep.cut_size = inst.cut.size();
  rep.cut_cap = inst.cut_cap;
  rep.partition_ok = partition_ok(inst);
  return rep;
}

}  // namespace powergraph
