#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "powergraph/errors.hpp"
#include "powergraph/random.hpp"
#include "powergraph/sim/model.hpp"

namespace powergraph::sim {

class Inbox {
 public:
  Inbox() = default;
  explicit Inbox(std::span<const Message> messages) : messages_(messages) {}
  auto begin() const { return messages_.begin(); }
  auto end() const { return messages_.end(); }
  std::size_t size() const { return messages_.size(); }
  bool empty() const { return messages_.empty(); }

 private:
  std::span<const Message> messages_;
};

namespace detail {

struct Envelope {
  Vertex from;
  Vertex to;
  std::size_t offset;
  std::size_t length;
};

// Shared per-run message buffer; validates every send against the model.
class Network {
 public:
  Network(const Graph& g, const Model& model, const RunOptions& options);

  void begin_round(std::size_t round);
  void send(Vertex from, Vertex to, const Payload& p);
  // Groups the round's messages by receiver (stable in sender order).
  void deliver();
  Inbox inbox(Vertex v) const;
  std::size_t word_bits() const { return word_bits_; }
  RoundStats& stats() { return stats_; }

 private:
  const Graph& g_;
  Model model_;
  RunOptions options_;
  std::size_t word_bits_;
  std::size_t round_ = 0;
  std::vector<Word> pool_;
  std::vector<Envelope> envelopes_;
  std::vector<Message> sorted_;
  std::vector<std::size_t> start_;
  std::vector<std::uint64_t> edge_stamp_;
  RoundStats stats_;
};

}  // namespace detail

class Outbox {
 public:
  Outbox(detail::Network& net, Vertex self, std::span<const Vertex> neighbors)
      : net_(&net), self_(self), neighbors_(neighbors) {}
  void send(Vertex to, const Payload& p) { net_->send(self_, to, p); }
  // One copy to every G-neighbor.
  void broadcast(const Payload& p) {
    for (Vertex u : neighbors_) net_->send(self_, u, p);
  }

 private:
  detail::Network* net_;
  Vertex self_;
  std::span<const Vertex> neighbors_;
};

// A per-node state machine. Each round every live node first sends, then
// all messages are delivered, then every live node receives. A node that is
// idle has nothing to send until it hears from someone; the run ends when all
// nodes are halted or idle.
template <typename P>
concept NodeProgram = requires(P p, const P cp, std::size_t round, Outbox& out, const Inbox& in) {
  { p.send(round, out) };
  { p.receive(round, in) };
  { cp.halted() } -> std::convertible_to<bool>;
  { cp.idle() } -> std::convertible_to<bool>;
};

template <typename P>
struct RunResult {
  std::vector<P> nodes;
  RoundStats stats;
};

// Runs one program instance per vertex of g. `factory(NodeContext)` builds the
// instance for a node; the context's rng is the node's own stream for
// (seed, id).
template <typename Factory>
auto run(const Graph& g, Factory&& factory, const Model& model, std::uint64_t seed,
         const RunOptions& options = {}) {
  using P = std::decay_t<decltype(factory(std::declval<NodeContext>()))>;
  static_assert(NodeProgram<P>, "factory must produce a NodeProgram");
  const std::size_t n = g.n();
  detail::Network net(g, model, options);
  RunResult<P> result;
  result.nodes.reserve(n);
  for (Vertex v = 0; v < n; ++v) {
    NodeContext ctx;
    ctx.id = v;
    ctx.n = n;
    ctx.neighbors = g.neighbors(v);
    ctx.word_bits = net.word_bits();
    ctx.model = model;
    ctx.rng = make_stream(seed, v);
    result.nodes.push_back(factory(std::move(ctx)));
  }
  const std::size_t cap = options.round_cap ? *options.round_cap : default_round_cap(n);
  auto quiet = [&] {
    return std::all_of(result.nodes.begin(), result.nodes.end(),
                       [](const P& p) { return p.halted() || p.idle(); });
  };
  std::size_t round = 0;
  std::vector<char> live(n);
  while (!quiet()) {
    if (round >= cap) {
      fail(ErrorKind::Nontermination,
           "round cap " + std::to_string(cap) + " reached without termination");
    }
    ++round;
    net.begin_round(round);
    // A node that halts while sending still receives this round's messages.
    for (Vertex v = 0; v < n; ++v) live[v] = !result.nodes[v].halted();
    for (Vertex v = 0; v < n; ++v) {
      if (!live[v]) continue;
      Outbox out(net, v, g.neighbors(v));
      result.nodes[v].send(round, out);
    }
    net.deliver();
    for (Vertex v = 0; v < n; ++v) {
      if (!live[v]) continue;
      result.nodes[v].receive(round, net.inbox(v));
    }
  }
  result.stats = net.stats();
  result.stats.rounds = round;
  return result;
}

}  // namespace powergraph::sim
