#include <gtest/gtest.h>

#include <algorithm>

#include "powergraph/errors.hpp"
#include "powergraph/random.hpp"
#include "powergraph/sim/primitives.hpp"
#include "support/testkit.hpp"

using namespace powergraph;
using namespace powergraph::sim;

namespace {

class BroadcastIdOnce {
 public:
  explicit BroadcastIdOnce(NodeContext ctx) : ctx_(std::move(ctx)) {}
  void send(std::size_t, Outbox& out) {
    Payload p;
    p.put(ctx_.id);
    out.broadcast(p);
    done_ = true;
  }
  void receive(std::size_t, const Inbox& in) {
    for (const Message& m : in) heard.push_back(m.from);
  }
  bool halted() const { return done_; }
  bool idle() const { return false; }

  std::vector<Vertex> heard;

 private:
  NodeContext ctx_;
  bool done_ = false;
};

struct HaltAtOnce {
  void send(std::size_t, Outbox&) {}
  void receive(std::size_t, const Inbox&) {}
  bool halted() const { return true; }
  bool idle() const { return true; }
};

// Sends a random word to every neighbor each round for a few rounds.
class Chatter {
 public:
  explicit Chatter(NodeContext ctx) : ctx_(std::move(ctx)) {}
  void send(std::size_t round, Outbox& out) {
    for (Vertex u : ctx_.neighbors) {
      Payload p;
      p.put(uniform_below(ctx_.rng, ctx_.n + 1));
      out.send(u, p);
    }
    if (round == 4) done_ = true;
  }
  void receive(std::size_t, const Inbox& in) {
    for (const Message& m : in) log.push_back(m.words[0] * 1000 + m.from);
  }
  bool halted() const { return done_; }
  bool idle() const { return false; }

  std::vector<std::uint64_t> log;

 private:
  NodeContext ctx_;
  bool done_ = false;
};

class SendTwice {
 public:
  explicit SendTwice(NodeContext ctx) : ctx_(std::move(ctx)) {}
  void send(std::size_t, Outbox& out) {
    Payload p;
    p.put(0);
    if (!ctx_.neighbors.empty()) {
      out.send(ctx_.neighbors[0], p);
      out.send(ctx_.neighbors[0], p);
    }
  }
  void receive(std::size_t, const Inbox&) {}
  bool halted() const { return false; }
  bool idle() const { return false; }

 private:
  NodeContext ctx_;
};

struct NeverStops {
  void send(std::size_t, Outbox&) {}
  void receive(std::size_t, const Inbox&) {}
  bool halted() const { return false; }
  bool idle() const { return false; }
};

Graph star_centered_at_5() {
  std::vector<Edge> e;
  for (Vertex v = 0; v < 5; ++v) e.push_back({5, v});
  return Graph::from_edges(6, e);
}

std::vector<std::vector<Item>> one_word_items(std::size_t n, std::size_t per_node) {
  std::vector<std::vector<Item>> items(n);
  for (Vertex v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < per_node; ++i) items[v].push_back({static_cast<Word>(v)});
  }
  return items;
}

}  // namespace

TEST(Run, BroadcastOnTriangle) {
  auto res = run(testkit::complete(3), [](NodeContext c) { return BroadcastIdOnce(std::move(c)); },
                 Model{}, 1);
  EXPECT_EQ(res.stats.rounds, 1u);
  EXPECT_EQ(res.stats.messages, 6u);
  EXPECT_EQ(res.stats.violations, 0u);
  EXPECT_EQ(res.stats.max_message_bits, 2u);  // one 2-bit word for n=3
  EXPECT_EQ(res.nodes[0].heard, (std::vector<Vertex>{1, 2}));
}

TEST(Run, ZeroBandwidthIsRejected) {
  Model m;
  m.bandwidth_words = 0;
  try {
    run(testkit::complete(3), [](NodeContext c) { return BroadcastIdOnce(std::move(c)); }, m, 1);
    FAIL() << "expected a bandwidth error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Bandwidth);
    EXPECT_NE(std::string(e.what()).find("node 0 round 1"), std::string::npos);
  }
}

TEST(Run, NonStrictBandwidthCountsViolations) {
  Model m;
  m.bandwidth_words = 0;
  RunOptions opt;
  opt.strict_bandwidth = false;
  auto res = run(testkit::complete(3), [](NodeContext c) { return BroadcastIdOnce(std::move(c)); }, m,
                 1, opt);
  EXPECT_EQ(res.stats.violations, 6u);
  EXPECT_EQ(res.stats.messages, 0u);
}

TEST(Run, HaltedSingleNodeTakesNoRounds) {
  Graph g = Graph::from_edges(1, {});
  auto res = run(g, [](NodeContext) { return HaltAtOnce{}; }, Model{}, 1);
  EXPECT_EQ(res.stats.rounds, 0u);
  EXPECT_EQ(res.stats.messages, 0u);
}

TEST(Run, RoundCapRaisesNontermination) {
  RunOptions opt;
  opt.round_cap = 7;
  try {
    run(testkit::path(3), [](NodeContext) { return NeverStops{}; }, Model{}, 1, opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Nontermination);
  }
}

TEST(Run, TopologyIsEnforced) {
  EXPECT_THROW(run(testkit::path(3), [](NodeContext c) { return SendTwice(std::move(c)); }, Model{}, 1),
               Error);
  // Word values above the word width are refused.
  struct Oversized {
    void send(std::size_t, Outbox& out) {
      Payload p;
      p.put(1000);
      out.send(1, p);
      done = true;
    }
    void receive(std::size_t, const Inbox&) {}
    bool halted() const { return done; }
    bool idle() const { return false; }
    bool done = false;
  };
  try {
    run(testkit::path(3), [](NodeContext) { return Oversized{}; }, Model{}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Encoding);
  }
}

TEST(Run, CongestRefusesNonNeighborButCliqueAllowsIt) {
  struct ToFar {
    explicit ToFar(NodeContext c) : id(c.id) {}
    void send(std::size_t, Outbox& out) {
      if (id == 0) {
        Payload p;
        p.put(1);
        out.send(2, p);
      }
      done = true;
    }
    void receive(std::size_t, const Inbox&) {}
    bool halted() const { return done; }
    bool idle() const { return false; }
    Vertex id;
    bool done = false;
  };
  auto make = [](NodeContext c) { return ToFar(std::move(c)); };
  EXPECT_THROW(run(testkit::path(3), make, Model{Variant::Congest, 8}, 1), Error);
  auto res = run(testkit::path(3), make, Model{Variant::Clique, 8}, 1);
  EXPECT_EQ(res.stats.messages, 1u);
}

TEST(Run, DeterministicForFixedSeed) {
  Graph g = connected_gnp(20, 0.3, 11);
  auto a = run(g, [](NodeContext c) { return Chatter(std::move(c)); }, Model{}, 42);
  auto b = run(g, [](NodeContext c) { return Chatter(std::move(c)); }, Model{}, 42);
  auto c = run(g, [](NodeContext c) { return Chatter(std::move(c)); }, Model{}, 43);
  EXPECT_EQ(a.stats, b.stats);
  bool differs = false;
  for (Vertex v = 0; v < g.n(); ++v) {
    EXPECT_EQ(a.nodes[v].log, b.nodes[v].log);
    differs |= a.nodes[v].log != c.nodes[v].log;
  }
  EXPECT_TRUE(differs);
}

TEST(Run, RoundCapDefault) {
  EXPECT_EQ(default_round_cap(0), 100u);
  EXPECT_EQ(default_round_cap(5), 2500u);
}

TEST(Words, WidthAndWideValues) {
  EXPECT_EQ(word_bits_for(1), 1u);
  EXPECT_EQ(word_bits_for(3), 2u);
  EXPECT_EQ(word_bits_for(4), 3u);
  EXPECT_EQ(word_bits_for(200), 8u);
  EXPECT_EQ(words_for_bound(256, 8), 1u);
  EXPECT_EQ(words_for_bound(257, 8), 2u);
  Payload p;
  p.put_wide(0x1234, 2, 8);
  Reader r(p.words());
  EXPECT_EQ(r.get_wide(2, 8), 0x1234u);
  EXPECT_TRUE(r.done());
  Payload q;
  EXPECT_THROW(q.put_wide(0x10000, 2, 8), Error);
}

TEST(LeaderBfs, PathOfThree) {
  auto t = elect_leader_bfs(testkit::path(3));
  EXPECT_EQ(t.leader, 0u);
  EXPECT_EQ(t.depth, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(t.parent, (std::vector<Vertex>{0, 0, 1}));
  EXPECT_EQ(t.children[0], (std::vector<Vertex>{1}));
}

TEST(LeaderBfs, CompleteGraph) {
  auto t = elect_leader_bfs(testkit::complete(4));
  EXPECT_EQ(t.leader, 0u);
  for (auto d : t.depth) EXPECT_LE(d, 1u);
}

TEST(LeaderBfs, StarWithHighCenter) {
  auto t = elect_leader_bfs(star_centered_at_5());
  EXPECT_EQ(t.leader, 0u);
  EXPECT_EQ(t.depth[5], 1u);
  for (Vertex v = 1; v < 5; ++v) EXPECT_EQ(t.depth[v], 2u);
  // Flooding trace: 0 reaches 5 in round 1, the other leaves in round 2,
  // after which nobody has news; one more round to notify parents.
  EXPECT_EQ(t.stats.rounds, 4u);
}

TEST(LeaderBfs, DepthsAreBfsDistancesAndRoundsNearDiameter) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    Graph g = connected_gnp(25, 0.12, s);
    auto t = elect_leader_bfs(g);
    EXPECT_EQ(t.leader, 0u);
    auto dist = bfs_distances(g, 0);
    for (Vertex v = 0; v < g.n(); ++v) {
      EXPECT_EQ(t.depth[v], dist[v]);
      if (v != 0) {
        EXPECT_EQ(t.depth[t.parent[v]] + 1, t.depth[v]);
        auto& ch = t.children[t.parent[v]];
        EXPECT_NE(std::find(ch.begin(), ch.end(), v), ch.end());
      }
    }
    EXPECT_LE(t.stats.rounds, diameter(g) + 3);
    EXPECT_EQ(t.stats.violations, 0u);
  }
}

TEST(LeaderBfs, DisconnectedIsAnError) {
  Graph g = Graph::from_edges(4, std::vector<Edge>{{0, 1}, {2, 3}});
  try {
    elect_leader_bfs(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Connectivity);
  }
}

TEST(Convergecast, PathOneItemEach) {
  Graph g = testkit::path(3);
  auto t = elect_leader_bfs(g);
  auto res = pipelined_convergecast(g, t, one_word_items(3, 1), Model{});
  ASSERT_EQ(res.gathered.size(), 3u);
  std::vector<Word> got;
  for (auto& i : res.gathered) got.push_back(i[0]);
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, (std::vector<Word>{0, 1, 2}));
}

TEST(Convergecast, StarTwoItemsPerLeaf) {
  const std::size_t leaves = 9;
  Graph g = testkit::star(leaves);
  auto t = elect_leader_bfs(g);
  auto items = one_word_items(g.n(), 2);
  items[0].clear();
  auto res = pipelined_convergecast(g, t, items, Model{});
  EXPECT_EQ(res.gathered.size(), 2 * leaves);
  EXPECT_LE(res.stats.rounds, 2 * g.n());
  EXPECT_EQ(res.stats.rounds, 3u);  // two items, then the end marker
}

TEST(Convergecast, CliqueDirectSends) {
  Graph g = testkit::complete(6);
  auto t = elect_leader_bfs(g);
  Model m{Variant::Clique, 8};
  auto res = pipelined_convergecast(g, t, one_word_items(6, 3), m);
  EXPECT_EQ(res.stats.rounds, 3u);
  EXPECT_EQ(res.gathered.size(), 18u);
}

TEST(Convergecast, CliqueIgnoresTopology) {
  Graph g = testkit::path(6);
  auto t = elect_leader_bfs(g);
  Model m{Variant::Clique, 8};
  auto res = pipelined_convergecast(g, t, one_word_items(6, 3), m);
  EXPECT_EQ(res.stats.rounds, 3u);
}

TEST(Convergecast, OversizeItemIsAnEncodingError) {
  Graph g = testkit::path(3);
  auto t = elect_leader_bfs(g);
  std::vector<std::vector<Item>> items(3);
  items[2].push_back(Item(9, 1));
  try {
    pipelined_convergecast(g, t, items, Model{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Encoding);
  }
}

TEST(Convergecast, RandomTreesGatherEverything) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    Graph g = connected_gnp(30, 0.1, s + 100);
    auto t = elect_leader_bfs(g);
    std::vector<std::vector<Item>> items(g.n());
    std::size_t total = 0;
    for (Vertex v = 0; v < g.n(); ++v) {
      for (std::size_t i = 0; i < (v * 7 + s) % 4; ++i, ++total) items[v].push_back({v, i});
    }
    auto res = pipelined_convergecast(g, t, items, Model{});
    EXPECT_EQ(res.gathered.size(), total);
    EXPECT_LE(res.stats.rounds, total + diameter(g) + 2);
    EXPECT_EQ(res.stats.violations, 0u);
  }
}

TEST(Broadcast, TreeDowncastReachesAll) {
  Graph g = connected_gnp(20, 0.15, 5);
  auto t = elect_leader_bfs(g);
  std::vector<Item> items{{1}, {2, 3}, {4}};
  auto res = tree_broadcast(g, t, items, Model{});
  for (Vertex v = 0; v < g.n(); ++v) EXPECT_EQ(res.received[v], items);
  EXPECT_LE(res.stats.rounds, items.size() + diameter(g) + 1);
}

TEST(Broadcast, DirectDistributeOneRound) {
  Graph g = testkit::path(4);
  std::vector<Item> per{{}, {1}, {2, 2}, {3}};
  auto res = direct_distribute(g, 0, per, Model{Variant::Clique, 8});
  EXPECT_EQ(res.stats.rounds, 1u);
  EXPECT_EQ(res.received[2], (std::vector<Item>{{2, 2}}));
  EXPECT_TRUE(res.received[0].empty());
  EXPECT_THROW(direct_distribute(g, 0, per, Model{}), Error);
}
