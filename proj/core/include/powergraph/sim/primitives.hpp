#pragma once

#include <cstdint>
#include <vector>

#include "powergraph/sim/simulator.hpp"

namespace powergraph::sim {

struct BfsTree {
  Vertex leader = 0;
  std::vector<Vertex> parent;  // parent[leader] == leader
  std::vector<std::size_t> depth;
  std::vector<std::vector<Vertex>> children;
  RoundStats stats;
};

// Floods the minimum id; every node adopts the neighbor that first offered it
// the minimum at the smallest distance (smallest sender id on ties) as parent,
// then tells that parent in one extra round. Throws Error(Connectivity) on a
// disconnected graph.
BfsTree elect_leader_bfs(const Graph& g, const Model& model = {}, std::uint64_t seed = 0,
                         const RunOptions& options = {});

using Item = std::vector<Word>;

struct GatherResult {
  std::vector<Item> gathered;  // in arrival order at the root
  RoundStats stats;
};

// Moves every node's items to the tree root. CONGEST: one item per tree edge
// per round with pipelining, and an empty end-marker message once a subtree is
// exhausted. CLIQUE: each node sends its own items straight to the root, one
// per round. An item wider than the bandwidth raises Error(Encoding).
GatherResult pipelined_convergecast(const Graph& g, const BfsTree& tree,
                                    const std::vector<std::vector<Item>>& items,
                                    const Model& model, const RunOptions& options = {});

struct BroadcastResult {
  std::vector<std::vector<Item>> received;  // per node, in order
  RoundStats stats;
};

// Pipelined downcast of the root's items to every node of the tree.
BroadcastResult tree_broadcast(const Graph& g, const BfsTree& tree, const std::vector<Item>& items,
                               const Model& model, const RunOptions& options = {});

// CLIQUE only: the root sends `per_node[v]` directly to each v in one round.
BroadcastResult direct_distribute(const Graph& g, Vertex root,
                                  const std::vector<Item>& per_node, const Model& model,
                                  const RunOptions& options = {});

}  // namespace powergraph::sim
