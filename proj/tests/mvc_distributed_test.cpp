#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <optional>

#include "powergraph/errors.hpp"
#include "powergraph/mvc_distributed.hpp"
#include "powergraph/random.hpp"
#include "support/testkit.hpp"

using namespace powergraph;

namespace {

std::vector<char> membership(std::size_t n, std::span<const Vertex> set) {
  std::vector<char> in(n, 0);
  for (Vertex v : set) in[v] = 1;
  return in;
}

std::size_t max_u_neighbors(const Graph& g, const std::vector<Vertex>& U) {
  auto in_u = membership(g.n(), U);
  std::size_t worst = 0;
  for (Vertex v = 0; v < g.n(); ++v) {
    std::size_t c = 0;
    for (Vertex u : g.neighbors(v)) c += in_u[u];
    worst = std::max(worst, c);
  }
  return worst;
}

// Voting lets several successful centers share a neighbor, so only the
// deterministic variants promise disjoint batches.
void expect_batches_are_g2_cliques(const Graph& g, const Phase1Trace& t, bool disjoint = true) {
  std::vector<char> seen(g.n(), 0);
  for (const auto& batch : t.batches) {
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (disjoint) EXPECT_FALSE(seen[batch[i]]) << "vertex joined twice";
      seen[batch[i]] = 1;
      for (std::size_t j = i + 1; j < batch.size(); ++j) {
        EXPECT_TRUE(within_distance_two(g, batch[i], batch[j]));
      }
    }
  }
}

// Largest class-survivor count over all centers and classes.
std::size_t max_class_survivors(const Graph& g, const std::vector<Vertex>& U) {
  auto in_u = membership(g.n(), U);
  std::size_t worst = 0;
  for (Vertex c = 0; c < g.n(); ++c) {
    std::optional<Rational> w_min;
    for (Vertex v : g.neighbors(c)) {
      if (g.weight(v) > 0 && (!w_min || g.weight(v) < *w_min)) w_min = g.weight(v);
    }
    if (!w_min) continue;
    std::map<int, std::size_t> count;
    for (Vertex v : g.neighbors(c)) {
      if (in_u[v]) worst = std::max(worst, ++count[weight_class(g.weight(v), *w_min)]);
    }
  }
  return worst;
}

}  // namespace

TEST(BuildH, WitnessEdge) {
  std::vector<Edge> F{{0, 1}, {1, 2}};
  std::vector<Vertex> U{0, 2};
  auto H = build_H_from_F(F, U);
  EXPECT_EQ(H.label, U);
  EXPECT_EQ(H.graph.m(), 1u);
  EXPECT_TRUE(H.graph.has_edge(0, 1));
}

TEST(BuildH, EmptyU) {
  auto H = build_H_from_F({}, {});
  EXPECT_EQ(H.graph.n(), 0u);
}

TEST(BuildH, CycleOfFiveGivesK5) {
  Graph g = testkit::cycle(5);
  std::vector<Vertex> U{0, 1, 2, 3, 4};
  auto F = g.edges();
  auto H = build_H_from_F(F, U);
  EXPECT_EQ(H.graph, testkit::complete(5));
}

TEST(BuildH, MatchesInducedSquareOnRandomGraphs) {
  for (std::uint64_t s = 0; s < 150; ++s) {
    std::size_t n = 2 + s % 29;
    Graph g = gnp(n, 0.15, s);
    auto rng = make_stream(s, 999);
    std::vector<Vertex> U;
    for (Vertex v = 0; v < n; ++v) {
      if (rng() % 2) U.push_back(v);
    }
    auto in_u = membership(n, U);
    std::vector<Edge> F;
    for (auto [a, b] : g.edges()) {
      if (in_u[a] || in_u[b]) F.push_back({a, b});
    }
    auto H = build_H_from_F(F, U);
    EXPECT_EQ(H.graph, induced_subgraph(square(g), U)) << "seed " << s;
  }
}

TEST(EffectiveEpsilon, RoundsDownToUnitFraction) {
  EXPECT_EQ(effective_epsilon(Rational(1, 2)), Rational(1, 2));
  EXPECT_EQ(effective_epsilon(Rational(2, 5)), Rational(1, 3));
  EXPECT_EQ(effective_epsilon(Rational(3)), Rational(1));
  EXPECT_THROW(effective_epsilon(Rational(0)), Error);
}

TEST(WeightClass, PowersOfTwoAboveBase) {
  EXPECT_EQ(weight_class(Rational(1), Rational(1)), 0);
  EXPECT_EQ(weight_class(Rational(3, 2), Rational(1)), 0);
  EXPECT_EQ(weight_class(Rational(2), Rational(1)), 1);
  EXPECT_EQ(weight_class(Rational(16), Rational(1)), 4);
  EXPECT_EQ(weight_class(Rational(15), Rational(2)), 2);
}

TEST(G2mvcEps, CycleOfFive) {
  auto run = g2mvc_eps(testkit::cycle(5), Rational(1, 2));
  EXPECT_EQ(run.solution.value, Rational(4));
  EXPECT_TRUE(run.trace.batches.empty());
  EXPECT_EQ(run.trace.U.size(), 5u);
  EXPECT_EQ(run.stats.violations, 0u);
}

TEST(G2mvcEps, StarOfSix) {
  Graph g = testkit::star(6);
  auto run = g2mvc_eps(g, Rational(1, 3));
  EXPECT_EQ(run.solution.value, Rational(6));
  ASSERT_EQ(run.trace.batches.size(), 1u);
  EXPECT_EQ(run.trace.centers[0], 0u);
  EXPECT_EQ(run.trace.batches[0].size(), 6u);
  EXPECT_EQ(run.trace.U, (std::vector<Vertex>{0}));
  EXPECT_EQ(testkit::brute_mvc(square(g)), Rational(6));
}

TEST(G2mvcEps, LargeEpsilonTakesEverything) {
  Graph g = connected_gnp(12, 0.3, 3);
  auto run = g2mvc_eps(g, Rational(2));
  EXPECT_EQ(run.solution.members.size(), 12u);
  EXPECT_EQ(run.stats.rounds, 0u);
  EXPECT_LE(run.solution.value, 2 * testkit::brute_mvc(square(g)));
}

TEST(G2mvcEps, DisconnectedIsAnError) {
  Graph g = Graph::from_edges(4, std::vector<Edge>{{0, 1}, {2, 3}});
  EXPECT_THROW(g2mvc_eps(g, Rational(1, 2)), Error);
}

TEST(G2mvcEps, ExactCapOnHIsSurfaced) {
  Graph g = testkit::cycle(12);
  MvcOptions opt;
  opt.exact.vertex_cap = 5;
  try {
    g2mvc_eps(g, Rational(1, 2), opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Size);
  }
}

TEST(G2mvcEps, RatioStructureAndRoundsOnRandomGraphs) {
  const Rational eps_values[] = {Rational(1), Rational(1, 2), Rational(1, 3)};
  for (std::uint64_t s = 0; s < 40; ++s) {
    Graph g = connected_gnp(8 + s % 9, s % 2 ? 0.4 : 0.2, s);
    Rational opt = testkit::brute_mvc(square(g));
    for (const Rational& eps : eps_values) {
      auto run = g2mvc_eps(g, eps);
      const auto l = static_cast<std::size_t>(effective_epsilon(eps).denominator());
      ASSERT_TRUE(is_feasible(g, ProblemKind::VC2, run.solution.members));
      EXPECT_LE(run.solution.value, (1 + eps) * opt);
      EXPECT_LE(max_u_neighbors(g, run.trace.U), l);
      expect_batches_are_g2_cliques(g, run.trace);
      EXPECT_LE(run.stats.rounds, 10 * g.n() * l);
      EXPECT_EQ(run.stats.violations, 0u);
      EXPECT_LE(run.stats.max_message_bits, 8 * sim::word_bits_for(g.n()));
    }
  }
}

TEST(G2mvcEps, DeterministicAndCliqueModeAgrees) {
  Graph g = connected_gnp(14, 0.3, 8);
  auto a = g2mvc_eps(g, Rational(1, 2));
  auto b = g2mvc_eps(g, Rational(1, 2));
  EXPECT_EQ(a.solution.members, b.solution.members);
  EXPECT_EQ(a.stats, b.stats);
  MvcOptions clique;
  clique.model.variant = sim::Variant::Clique;
  auto c = g2mvc_eps(g, Rational(1, 2), clique);
  EXPECT_EQ(c.solution.members, a.solution.members);
  EXPECT_LE(c.trace.phase2.rounds, a.trace.phase2.rounds);
}

TEST(G2mwvcEps, CycleOfFiveUnitWeights) {
  Graph g = testkit::weighted(testkit::cycle(5), {1, 1, 1, 1, 1});
  auto run = g2mwvc_eps(g, Rational(1, 2));
  EXPECT_EQ(run.solution.value, Rational(4));
  EXPECT_TRUE(run.trace.batches.empty());
}

TEST(G2mwvcEps, HeavyCenterStar) {
  Graph g = testkit::weighted(testkit::star(8), {10, 1, 1, 1, 1, 1, 1, 1, 1});
  auto run = g2mwvc_eps(g, Rational(1));
  EXPECT_EQ(run.solution.value, Rational(8));
  ASSERT_EQ(run.trace.batches.size(), 1u);
  EXPECT_EQ(run.trace.batches[0].size(), 8u);
  EXPECT_EQ(testkit::brute_mvc(square(g)), Rational(8));
}

TEST(G2mwvcEps, ZeroWeightVertexIsAlwaysTaken) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    Graph g = with_random_weights(connected_gnp(10, 0.3, s), 16, s);
    auto w = *g.weights();
    w[s % 10] = 0;
    g.set_weights(w);
    auto run = g2mwvc_eps(g, Rational(1, 2));
    EXPECT_TRUE(std::binary_search(run.solution.members.begin(), run.solution.members.end(),
                                   static_cast<Vertex>(s % 10)));
    EXPECT_EQ(run.trace.free_vertices, (std::vector<Vertex>{static_cast<Vertex>(s % 10)}));
  }
}

TEST(G2mwvcEps, RatioAndSurvivorBoundOnRandomGraphs) {
  const Rational eps_values[] = {Rational(1), Rational(1, 2), Rational(1, 3)};
  for (std::uint64_t s = 0; s < 30; ++s) {
    Graph g = with_random_weights(connected_gnp(8 + s % 9, s % 2 ? 0.4 : 0.2, s), 16, s + 7);
    Rational opt = testkit::brute_mvc(square(g));
    for (const Rational& eps : eps_values) {
      auto run = g2mwvc_eps(g, eps);
      ASSERT_TRUE(is_feasible(g, ProblemKind::VC2, run.solution.members));
      EXPECT_LE(run.solution.value, (1 + eps) * opt);
      Rational bound = 2 * (1 + eps) / eps;
      EXPECT_LE(Rational(static_cast<std::int64_t>(max_class_survivors(g, run.trace.U))), bound);
      expect_batches_are_g2_cliques(g, run.trace);
      EXPECT_EQ(run.stats.violations, 0u);
    }
  }
}

TEST(G2mwvcEps, UnrepresentableWeightIsAnEncodingError) {
  Graph g = testkit::weighted(testkit::path(3), {100, 1, 1});
  try {
    g2mwvc_eps(g, Rational(1, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Encoding);
  }
}

TEST(G2mvcTrivial, TakesEveryVertex) {
  Graph c5 = testkit::cycle(5);
  EXPECT_EQ(g2mvc_trivial(c5).value, Rational(5));
  EXPECT_EQ(testkit::brute_mvc(square(c5)), Rational(4));
  EXPECT_EQ(g2mvc_trivial(testkit::path(3)).value, Rational(3));
  EXPECT_EQ(testkit::brute_mvc(square(testkit::path(3))), Rational(2));
}

TEST(G2mvcTrivial, SquareCoversOfConnectedGraphsAreLarge) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    Graph g = s % 3 == 0 ? random_tree(10, s) : connected_gnp(10, 0.2, s);
    EXPECT_GE(testkit::brute_mvc(square(g)), Rational(5));
  }
}

TEST(G2mvcCcVoting, StarCenterWinsInOnePhase) {
  Graph g = testkit::star(20);
  auto run = g2mvc_cc_voting(g, Rational(1, 2), {});
  EXPECT_EQ(run.trace.centers, (std::vector<Vertex>{0}));
  EXPECT_EQ(run.trace.iterations, 2u);  // the winning phase plus one status round
  EXPECT_EQ(run.solution.value, Rational(20));
}

TEST(G2mvcCcVoting, CycleHasNoCandidates) {
  auto run = g2mvc_cc_voting(testkit::cycle(5), Rational(1, 2), {});
  EXPECT_EQ(run.trace.phase1.rounds, 0u);
  EXPECT_EQ(run.solution.value, Rational(4));
}

TEST(G2mvcCcVoting, FixedSeedIsDeterministic) {
  Graph g = connected_gnp(60, 0.5, 2);
  MvcOptions opt;
  opt.seed = 77;
  opt.exact.vertex_cap = 200;
  auto a = g2mvc_cc_voting(g, Rational(1, 2), opt);
  auto b = g2mvc_cc_voting(g, Rational(1, 2), opt);
  EXPECT_EQ(a.solution.members, b.solution.members);
  EXPECT_EQ(a.stats, b.stats);
  EXPECT_EQ(a.trace.centers, b.trace.centers);
}

TEST(G2mvcCcVoting, FeasibleRatioAndChargingOnDenseGraphs) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    Graph g = connected_gnp(40, 0.6, s);
    MvcOptions opt;
    opt.seed = s;
    opt.exact.vertex_cap = 64;
    auto run = g2mvc_cc_voting(g, Rational(1, 2), opt);
    ASSERT_TRUE(is_feasible(g, ProblemKind::VC2, run.solution.members));
    expect_batches_are_g2_cliques(g, run.trace, false);
    EXPECT_LE(max_u_neighbors(g, run.trace.U), 8u * 2 + 2);
    EXPECT_EQ(run.stats.violations, 0u);
    EXPECT_LE(run.solution.value, Rational(3, 2) * exact_mvc2(g).value);
  }
}

TEST(G2mvcCcVoting, RatioOnSmallGraphs) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    Graph g = connected_gnp(18, 0.75, s);
    MvcOptions opt;
    opt.seed = s;
    auto run = g2mvc_cc_voting(g, Rational(1), opt);
    EXPECT_LE(run.solution.value, 2 * testkit::brute_mvc(square(g)));
  }
}
