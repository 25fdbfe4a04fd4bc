#include "powergraph/sim/primitives.hpp"

#include <deque>
#include <string>

namespace powergraph::sim {

namespace {

class FloodMin {
 public:
  explicit FloodMin(NodeContext ctx) : ctx_(std::move(ctx)), best_(ctx_.id), parent_(ctx_.id) {}

  void send(std::size_t, Outbox& out) {
    if (!dirty_) return;
    Payload p;
    p.put(best_).put(dist_);
    out.broadcast(p);
    dirty_ = false;
  }
  void receive(std::size_t, const Inbox& in) {
    for (const Message& m : in) {
      Reader r(m.words);
      Vertex id = static_cast<Vertex>(r.get());
      std::size_t d = static_cast<std::size_t>(r.get()) + 1;
      if (id < best_ || (id == best_ && d < dist_)) {
        best_ = id;
        dist_ = d;
        parent_ = m.from;
        dirty_ = true;
      } else if (id == best_ && d == dist_ && m.from < parent_) {
        parent_ = m.from;
      }
    }
  }
  bool halted() const { return false; }
  bool idle() const { return !dirty_; }

  Vertex best() const { return best_; }
  std::size_t dist() const { return dist_; }
  Vertex parent() const { return parent_; }

 private:
  NodeContext ctx_;
  Vertex best_;
  std::size_t dist_ = 0;
  Vertex parent_;
  bool dirty_ = true;
};

class NotifyParent {
 public:
  NotifyParent(NodeContext ctx, Vertex parent) : ctx_(std::move(ctx)), parent_(parent) {}
  void send(std::size_t, Outbox& out) {
    if (parent_ != ctx_.id) {
      Payload p;
      p.put(1);
      out.send(parent_, p);
    }
    sent_ = true;
  }
  void receive(std::size_t, const Inbox& in) {
    for (const Message& m : in) children.push_back(m.from);
  }
  bool halted() const { return sent_; }
  bool idle() const { return false; }

  std::vector<Vertex> children;

 private:
  NodeContext ctx_;
  Vertex parent_;
  bool sent_ = false;
};

class TreeGather {
 public:
  TreeGather(NodeContext ctx, Vertex parent, std::size_t n_children, std::deque<Item> items)
      : ctx_(std::move(ctx)), parent_(parent), pending_(n_children), queue_(std::move(items)) {}

  void send(std::size_t, Outbox& out) {
    if (is_root()) return;
    Payload p;
    if (!queue_.empty()) {
      for (Word w : queue_.front()) p.put(w);
      queue_.pop_front();
      out.send(parent_, p);
    } else if (pending_ == 0 && !ended_) {
      out.send(parent_, p);  // empty end marker
      ended_ = true;
    }
  }
  void receive(std::size_t, const Inbox& in) {
    for (const Message& m : in) {
      if (m.words.empty()) {
        --pending_;
      } else if (is_root()) {
        gathered.emplace_back(m.words.begin(), m.words.end());
      } else {
        queue_.emplace_back(m.words.begin(), m.words.end());
      }
    }
  }
  bool halted() const { return is_root() ? pending_ == 0 : ended_; }
  bool idle() const { return is_root() || (queue_.empty() && pending_ > 0); }

  std::vector<Item> gathered;

 private:
  bool is_root() const { return parent_ == ctx_.id; }

  NodeContext ctx_;
  Vertex parent_;
  std::size_t pending_;
  std::deque<Item> queue_;
  bool ended_ = false;
};

class DirectGather {
 public:
  DirectGather(NodeContext ctx, Vertex root, std::deque<Item> items)
      : ctx_(std::move(ctx)), root_(root), queue_(std::move(items)) {}

  void send(std::size_t, Outbox& out) {
    if (ctx_.id == root_ || queue_.empty()) return;
    Payload p;
    for (Word w : queue_.front()) p.put(w);
    queue_.pop_front();
    out.send(root_, p);
  }
  void receive(std::size_t, const Inbox& in) {
    for (const Message& m : in) gathered.emplace_back(m.words.begin(), m.words.end());
  }
  bool halted() const { return ctx_.id != root_ && queue_.empty(); }
  bool idle() const { return ctx_.id == root_; }

  std::vector<Item> gathered;

 private:
  NodeContext ctx_;
  Vertex root_;
  std::deque<Item> queue_;
};

class TreeScatter {
 public:
  TreeScatter(NodeContext ctx, std::vector<Vertex> children, bool root, std::deque<Item> items)
      : ctx_(std::move(ctx)), children_(std::move(children)), queue_(std::move(items)),
        got_end_(root) {
    if (root) received.assign(queue_.begin(), queue_.end());
  }

  void send(std::size_t, Outbox& out) {
    Payload p;
    if (!queue_.empty()) {
      for (Word w : queue_.front()) p.put(w);
      queue_.pop_front();
      for (Vertex c : children_) out.send(c, p);
    } else if (got_end_ && !sent_end_) {
      for (Vertex c : children_) out.send(c, p);
      sent_end_ = true;
    }
  }
  void receive(std::size_t, const Inbox& in) {
    for (const Message& m : in) {
      if (m.words.empty()) {
        got_end_ = true;
      } else {
        received.emplace_back(m.words.begin(), m.words.end());
        queue_.emplace_back(m.words.begin(), m.words.end());
      }
    }
  }
  bool halted() const { return got_end_ && queue_.empty() && (children_.empty() || sent_end_); }
  bool idle() const { return queue_.empty() && !got_end_; }

  std::vector<Item> received;

 private:
  NodeContext ctx_;
  std::vector<Vertex> children_;
  std::deque<Item> queue_;
  bool got_end_;
  bool sent_end_ = false;
};

class DirectScatter {
 public:
  DirectScatter(NodeContext ctx, Vertex root, const std::vector<Item>* per_node)
      : ctx_(std::move(ctx)), root_(root), per_node_(per_node) {}
  void send(std::size_t, Outbox& out) {
    if (ctx_.id == root_) {
      for (Vertex v = 0; v < ctx_.n; ++v) {
        if (v == root_ || (*per_node_)[v].empty()) continue;
        Payload p;
        for (Word w : (*per_node_)[v]) p.put(w);
        out.send(v, p);
      }
    }
    done_ = true;
  }
  void receive(std::size_t, const Inbox& in) {
    for (const Message& m : in) received.emplace_back(m.words.begin(), m.words.end());
  }
  bool halted() const { return false; }
  bool idle() const { return done_; }

  std::vector<Item> received;

 private:
  NodeContext ctx_;
  Vertex root_;
  const std::vector<Item>* per_node_;
  bool done_ = false;
};

void check_items(const std::vector<Item>& items, const Model& model, std::size_t word_bits) {
  const Word limit = word_bits >= 64 ? ~Word{0} : ((Word{1} << word_bits) - 1);
  for (const Item& item : items) {
    if (item.empty() || item.size() > model.bandwidth_words) {
      fail(ErrorKind::Encoding, "item of " + std::to_string(item.size()) +
                                    " words does not fit one message of " +
                                    std::to_string(model.bandwidth_words) + " words");
    }
    for (Word w : item) {
      if (w > limit) fail(ErrorKind::Encoding, "item word exceeds the word width");
    }
  }
}

}  // namespace

BfsTree elect_leader_bfs(const Graph& g, const Model& model, std::uint64_t seed,
                         const RunOptions& options) {
  if (g.n() == 0 || !is_connected(g)) {
    fail(ErrorKind::Connectivity, "leader election needs a connected, nonempty graph");
  }
  Model links = model;
  links.variant = Variant::Congest;
  auto flood = run(g, [](NodeContext ctx) { return FloodMin(std::move(ctx)); }, links, seed, options);
  BfsTree tree;
  tree.leader = flood.nodes[0].best();
  tree.parent.resize(g.n());
  tree.depth.resize(g.n());
  for (Vertex v = 0; v < g.n(); ++v) {
    tree.parent[v] = flood.nodes[v].parent();
    tree.depth[v] = flood.nodes[v].dist();
  }
  auto notify = run(
      g, [&](NodeContext ctx) { Vertex p = tree.parent[ctx.id]; return NotifyParent(std::move(ctx), p); },
      links, seed, options);
  tree.children.resize(g.n());
  for (Vertex v = 0; v < g.n(); ++v) tree.children[v] = notify.nodes[v].children;
  tree.stats = flood.stats;
  tree.stats += notify.stats;
  return tree;
}

GatherResult pipelined_convergecast(const Graph& g, const BfsTree& tree,
                                    const std::vector<std::vector<Item>>& items,
                                    const Model& model, const RunOptions& options) {
  const std::size_t wb = word_bits_for(g.n());
  for (const auto& list : items) check_items(list, model, wb);
  GatherResult out;
  const Vertex root = tree.leader;
  if (model.variant == Variant::Clique) {
    auto res = run(
        g,
        [&](NodeContext ctx) {
          Vertex v = ctx.id;
          return DirectGather(std::move(ctx), root, std::deque<Item>(items[v].begin(), items[v].end()));
        },
        model, 0, options);
    out.gathered = items[root];
    out.gathered.insert(out.gathered.end(), res.nodes[root].gathered.begin(),
                        res.nodes[root].gathered.end());
    out.stats = res.stats;
    return out;
  }
  auto res = run(
      g,
      [&](NodeContext ctx) {
        Vertex v = ctx.id;
        return TreeGather(std::move(ctx), tree.parent[v], tree.children[v].size(),
                          std::deque<Item>(items[v].begin(), items[v].end()));
      },
      model, 0, options);
  out.gathered = items[root];
  out.gathered.insert(out.gathered.end(), res.nodes[root].gathered.begin(),
                      res.nodes[root].gathered.end());
  out.stats = res.stats;
  return out;
}

BroadcastResult tree_broadcast(const Graph& g, const BfsTree& tree, const std::vector<Item>& items,
                               const Model& model, const RunOptions& options) {
  check_items(items, model, word_bits_for(g.n()));
  Model links = model;
  links.variant = Variant::Congest;
  auto res = run(
      g,
      [&](NodeContext ctx) {
        Vertex v = ctx.id;
        bool root = v == tree.leader;
        return TreeScatter(std::move(ctx), tree.children[v], root,
                           root ? std::deque<Item>(items.begin(), items.end()) : std::deque<Item>{});
      },
      links, 0, options);
  BroadcastResult out;
  for (auto& node : res.nodes) out.received.push_back(std::move(node.received));
  out.stats = res.stats;
  return out;
}

BroadcastResult direct_distribute(const Graph& g, Vertex root, const std::vector<Item>& per_node,
                                  const Model& model, const RunOptions& options) {
  if (model.variant != Variant::Clique) {
    fail(ErrorKind::Topology, "direct distribution needs the congested clique");
  }
  auto res = run(
      g, [&](NodeContext ctx) { return DirectScatter(std::move(ctx), root, &per_node); }, model, 0,
      options);
  BroadcastResult out;
  for (auto& node : res.nodes) out.received.push_back(std::move(node.received));
  out.received[root] = per_node[root].empty() ? std::vector<Item>{} : std::vector<Item>{per_node[root]};
  out.stats = res.stats;
  return out;
}

}  // namespace powergraph::sim
