#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "powergraph/exact.hpp"
#include "powergraph/graph.hpp"
#include "powergraph/sim/model.hpp"

namespace powergraph {

struct MvcOptions {
  sim::Model model;
  std::uint64_t seed = 0;
  ExactOptions exact;
  sim::RunOptions run;
};

// What Phase I left behind, for inspection by tests and reports.
struct Phase1Trace {
  // Each batch is one center's R-neighborhood (or one weight class of it) at
  // the moment it joined the cover, in joining order.
  std::vector<std::vector<Vertex>> batches;
  std::vector<Vertex> centers;  // center of each batch
  std::vector<Vertex> free_vertices;  // zero-weight vertices taken up front
  std::vector<Vertex> U;  // sorted
  std::size_t f_edges = 0;
  std::size_t iterations = 0;  // iterations (unweighted) or voting phases
  sim::RoundStats phase1;
  sim::RoundStats phase2;
};

struct MvcRun {
  Solution solution;
  sim::RoundStats stats;
  Phase1Trace trace;
};

// G^2[U] relabelled to 0..|U|-1 in increasing id order; label[i] is the
// original id of vertex i.
struct InducedGraph {
  Graph graph;
  std::vector<Vertex> label;
};

// Rebuilds G^2[U] from F, the G-edges with at least one endpoint in U.
InducedGraph build_H_from_F(std::span<const Edge> F, std::span<const Vertex> U);

// Effective epsilon 1/ceil(1/eps). Throws Error(Domain) unless eps > 0.
Rational effective_epsilon(const Rational& eps);

// Unweighted (1+eps)-approximate cover of G^2. Candidates are centers with
// more than 1/eps' remaining neighbors; a candidate fires when it holds the
// largest id among candidates within two hops. The leader then gathers F,
// rebuilds H = G^2[U] and solves it exactly. For eps > 1 every vertex is
// returned without communication.
MvcRun g2mvc_eps(const Graph& g, const Rational& eps, const MvcOptions& options = {});

// Picks the cover of H at the leader. `red` lists the G-edges inside U in
// H's labels.
using HSolver = std::function<std::vector<Vertex>(const InducedGraph& H, std::span<const Edge> red)>;

// g2mvc_eps with a different leader-side solver for H (the exact solver by
// default). The eps > 1 shortcut does not apply here.
MvcRun g2mvc_eps_with(const Graph& g, const Rational& eps, const HSolver& solve,
                      const MvcOptions& options = {});

// Weighted variant. Zero-weight vertices are taken for free; then every
// center in id order tests each weight class of its neighborhood against
// w*_i <= W_i·eps/(1+eps) and adds the selectable classes.
MvcRun g2mvc_weighted(const Graph& g, const Rational& eps, const MvcOptions& options = {});
inline MvcRun g2mwvc_eps(const Graph& g, const Rational& eps, const MvcOptions& options = {}) {
  return g2mvc_weighted(g, eps, options);
}

// All vertices; ratio at most 1 + 1/floor(r/2) on G^r for connected g.
Solution g2mvc_trivial(const Graph& g, unsigned r = 2);

// Randomized congested-clique variant: candidates (remaining degree above
// 8/eps'+2) draw ranks in [n^4]; each remaining vertex votes for its
// candidate neighbor of highest rank (larger id on ties) and a candidate with
// at least d_R/8 votes adds its neighborhood. Afterwards vertex 0 gathers F
// directly and distributes the answer in one round.
MvcRun g2mvc_cc_voting(const Graph& g, const Rational& eps, const MvcOptions& options = {});

// Weight class of w relative to the smallest positive weight w_min:
// the i with w_min·2^i <= w < w_min·2^(i+1).
int weight_class(const Rational& w, const Rational& w_min);

}  // namespace powergraph
