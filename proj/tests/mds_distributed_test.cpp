#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "powergraph/errors.hpp"
#include "powergraph/mds_distributed.hpp"
#include "powergraph/random.hpp"
#include "support/testkit.hpp"

using namespace powergraph;

namespace {

std::vector<Vertex> all_vertices(std::size_t n) {
  std::vector<Vertex> v(n);
  for (Vertex i = 0; i < n; ++i) v[i] = i;
  return v;
}

std::vector<char> mask(std::size_t n, const std::vector<Vertex>& U) {
  std::vector<char> m(n, 0);
  for (Vertex u : U) m[u] = 1;
  return m;
}

std::size_t max_degree(const Graph& g) {
  std::size_t d = 0;
  for (Vertex v = 0; v < g.n(); ++v) d = std::max(d, g.degree(v));
  return d;
}

Graph small_connected(std::uint64_t s) {
  std::size_t n = 2 + s % 13;
  switch (s % 3) {
    case 0:
      return random_tree(n, s);
    case 1:
      return connected_gnp(n, 0.25, s);
    default:
      return connected_gnp(n, 0.45, s);
  }
}

EstimateConfig sampling_only() {
  EstimateConfig cfg;
  cfg.exact_threshold = 0;
  return cfg;
}

}  // namespace

TEST(Estimate, IsolatedVertexIsExact) {
  Graph g(1);
  std::vector<Vertex> U{0};
  auto e = estimate_2hop_counts(g, U);
  EXPECT_EQ(e.value[0], 1.0);
  EXPECT_TRUE(e.exact[0]);

  Graph h = Graph::from_edges(4, std::vector<Edge>{{1, 2}, {2, 3}});
  auto f = estimate_2hop_counts(h, U);
  EXPECT_EQ(f.value, (std::vector<double>{1, 0, 0, 0}));
}

TEST(Estimate, PathOfFiveMiddle) {
  Graph g = testkit::path(5);
  auto U = all_vertices(5);
  auto e = estimate_2hop_counts(g, U);
  EXPECT_EQ(e.value[2], 5.0);
  EXPECT_EQ(e.value[0], 3.0);
  EXPECT_EQ(e.value[1], 4.0);
  for (char x : e.exact) EXPECT_TRUE(x);
  EXPECT_EQ(e.stats.violations, 0u);
}

TEST(Estimate, ExactPathMatchesBfs) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    Graph g = gnp(5 + s % 30, 0.15, s);
    std::mt19937_64 rng(s);
    std::vector<Vertex> U;
    for (Vertex v = 0; v < g.n(); ++v) {
      if (rng() % 2) U.push_back(v);
    }
    auto e = estimate_2hop_counts(g, U, {}, s);
    auto m = mask(g.n(), U);
    for (Vertex v = 0; v < g.n(); ++v) {
      if (!e.exact[v]) continue;
      EXPECT_EQ(e.value[v], static_cast<double>(testkit::two_hop_count(g, v, m))) << "seed " << s << " v " << v;
    }
  }
}

TEST(Estimate, SamplingBracketOnDenseRandomGraphs) {
  std::size_t inside = 0, total = 0;
  for (std::uint64_t s = 0; s < 3; ++s) {
    Graph g = gnp(200, 0.1, s);
    auto U = all_vertices(200);
    auto e = estimate_2hop_counts(g, U, sampling_only(), s);
    auto m = mask(200, U);
    for (Vertex v = 0; v < g.n(); ++v) {
      ASSERT_FALSE(e.exact[v]);
      const double d = static_cast<double>(testkit::two_hop_count(g, v, m));
      ++total;
      if (e.value[v] >= 0.75 * d && e.value[v] <= 1.25 * d) ++inside;
    }
    EXPECT_EQ(e.stats.violations, 0u);
  }
  EXPECT_GE(inside * 100, total * 95);
}

TEST(Estimate, SamplingSeesEmptyNeighborhoods) {
  Graph g = testkit::path(6);
  std::vector<Vertex> U{0};
  auto e = estimate_2hop_counts(g, U, sampling_only(), 3);
  EXPECT_GT(e.value[0], 0.0);
  EXPECT_GT(e.value[2], 0.0);
  EXPECT_EQ(e.value[3], 0.0);
  EXPECT_EQ(e.value[5], 0.0);
}

TEST(Estimate, SubsetOfVerticesSampled) {
  std::size_t inside = 0, total = 0;
  Graph g = gnp(120, 0.08, 11);
  std::vector<Vertex> U;
  for (Vertex v = 0; v < g.n(); v += 3) U.push_back(v);
  auto e = estimate_2hop_counts(g, U, sampling_only(), 5);
  auto m = mask(g.n(), U);
  for (Vertex v = 0; v < g.n(); ++v) {
    const double d = static_cast<double>(testkit::two_hop_count(g, v, m));
    if (d == 0) {
      EXPECT_EQ(e.value[v], 0.0);
      continue;
    }
    ++total;
    if (std::abs(e.value[v] - d) <= 0.25 * d) ++inside;
  }
  EXPECT_GE(inside * 100, total * 95);
}

TEST(Estimate, DefaultsMeetFailureBound) {
  for (std::size_t n : {2u, 10u, 100u, 1000u}) {
    auto r = resolve_estimate({}, n, {});
    EXPECT_LE(estimate_failure_bound(r), 1.0 / (static_cast<double>(n) * n) + 1e-12) << n;
    EXPECT_EQ(r.samples, static_cast<std::size_t>(std::ceil(384 * std::log(static_cast<double>(n)))));
    EXPECT_EQ(r.exact_threshold, static_cast<std::size_t>(std::ceil(8 * std::log(static_cast<double>(n)))));
  }
}

TEST(Estimate, ConfigErrors) {
  auto kind_of = [](EstimateConfig cfg, sim::Model model = {}) {
    try {
      resolve_estimate(cfg, 10, model);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Input;
  };
  EstimateConfig c;
  c.epsilon = Rational(1, 4);
  EXPECT_EQ(kind_of(c), ErrorKind::Config);
  c.epsilon = Rational(0);
  EXPECT_EQ(kind_of(c), ErrorKind::Config);
  c = {};
  c.precision_words = 1;
  EXPECT_EQ(kind_of(c), ErrorKind::Config);
  c.precision_words = 9;
  EXPECT_EQ(kind_of(c), ErrorKind::Config);
  c = {};
  c.samples = 0;
  EXPECT_EQ(kind_of(c), ErrorKind::Config);
  sim::Model narrow;
  narrow.bandwidth_words = 1;
  EXPECT_EQ(kind_of({}, narrow), ErrorKind::Config);
}

TEST(G2mds, StarIsOnePhaseOneVertex) {
  auto run = g2mds_logd(testkit::star(8));
  EXPECT_EQ(run.solution.value, Rational(1));
  EXPECT_EQ(run.phases.size(), 1u);
  EXPECT_EQ(run.phases[0].candidates.size(), 9u);
}

TEST(G2mds, CycleOfFive) {
  auto run = g2mds_logd(testkit::cycle(5));
  EXPECT_EQ(run.solution.value, Rational(1));
}

TEST(G2mds, SingleVertex) {
  auto run = g2mds_logd(Graph(1));
  EXPECT_EQ(run.solution.members, (std::vector<Vertex>{0}));
}

TEST(G2mds, DisconnectedIsRejected) {
  try {
    g2mds_logd(Graph(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Connectivity);
  }
}

TEST(G2mds, RatioAgainstBruteForce) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    Graph g = small_connected(s);
    MdsOptions o;
    o.seed = s;
    auto run = g2mds_logd(g, o);
    ASSERT_TRUE(is_feasible(g, ProblemKind::DS2, run.solution.members)) << "seed " << s;
    const std::size_t d = max_degree(g);
    const double bound = 8 * harmonic_number(d * d) * to_double(testkit::brute_mds(square(g)));
    EXPECT_LE(to_double(run.solution.value), bound) << "seed " << s;
    EXPECT_EQ(run.stats.violations, 0u);
  }
}

TEST(G2mds, PhaseStructure) {
  for (std::uint64_t s = 0; s < 40; ++s) {
    Graph g = small_connected(s + 500);
    MdsOptions o;
    o.seed = s;
    auto run = g2mds_logd(g, o);
    std::vector<std::vector<std::size_t>> dist;
    for (Vertex v = 0; v < g.n(); ++v) dist.push_back(bfs_distances(g, v));
    std::size_t uncovered = g.n() + 1;
    for (const auto& ph : run.phases) {
      EXPECT_FALSE(ph.joined.empty());
      EXPECT_LT(ph.uncovered.size(), uncovered);
      uncovered = ph.uncovered.size();
      auto m = mask(g.n(), ph.uncovered);
      // Exact counts throughout at this size, so candidates can be checked.
      std::vector<int> rho(g.n(), 0);
      for (Vertex v = 0; v < g.n(); ++v) {
        ASSERT_TRUE(ph.exact[v]);
        ASSERT_EQ(ph.estimate[v], static_cast<double>(testkit::two_hop_count(g, v, m)));
        if (ph.estimate[v] > 0) rho[v] = 1 + static_cast<int>(std::ceil(std::log2(ph.estimate[v])));
      }
      for (Vertex v = 0; v < g.n(); ++v) {
        bool maximal = rho[v] > 0;
        for (Vertex u = 0; u < g.n(); ++u) {
          if (dist[v][u] <= 4 && rho[u] > rho[v]) maximal = false;
        }
        EXPECT_EQ(maximal, std::binary_search(ph.candidates.begin(), ph.candidates.end(), v));
      }
      for (Vertex v : ph.joined) EXPECT_TRUE(std::binary_search(ph.candidates.begin(), ph.candidates.end(), v));
    }
  }
}

TEST(G2mds, FeasibleUnderEstimatorNoise) {
  for (std::uint64_t s = 0; s < 15; ++s) {
    Graph g = connected_gnp(30 + s, 0.12, s);
    MdsOptions o;
    o.seed = s;
    o.estimate = sampling_only();
    o.estimate.samples = 64;
    auto run = g2mds_logd(g, o);
    EXPECT_TRUE(is_feasible(g, ProblemKind::DS2, run.solution.members)) << "seed " << s;
    EXPECT_EQ(run.stats.violations, 0u);
    for (const auto& ph : run.phases) EXPECT_FALSE(ph.joined.empty());
  }
}

TEST(G2mds, Deterministic) {
  Graph g = connected_gnp(40, 0.1, 9);
  MdsOptions o;
  o.seed = 77;
  o.estimate = sampling_only();
  o.estimate.samples = 40;
  auto a = g2mds_logd(g, o);
  auto b = g2mds_logd(g, o);
  EXPECT_EQ(a.solution.members, b.solution.members);
  EXPECT_EQ(a.stats, b.stats);
}

TEST(Harmonic, SmallValues) {
  EXPECT_DOUBLE_EQ(harmonic_number(0), 0.0);
  EXPECT_DOUBLE_EQ(harmonic_number(1), 1.0);
  EXPECT_DOUBLE_EQ(harmonic_number(4), 25.0 / 12.0);
}
