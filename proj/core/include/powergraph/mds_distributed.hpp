#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "powergraph/graph.hpp"
#include "powergraph/rational.hpp"
#include "powergraph/sim/model.hpp"

namespace powergraph {

struct EstimateConfig {
  Rational epsilon{1, 8};  // must lie in (0, 1/4)
  // Samples per vertex; default ⌈(6/ε²)·ln n⌉ so that exp(-ε²r/3) <= n^-2.
  std::optional<std::size_t> samples;
  // Words per quantized sample: one exponent word, the rest mantissa.
  std::size_t precision_words = 2;
  // Vertices of G-degree below this count exactly; default ⌈8·ln n⌉.
  // Zero disables the exact path.
  std::optional<std::size_t> exact_threshold;
};

struct ResolvedEstimate {
  double epsilon = 0.125;
  std::size_t samples = 1;
  std::size_t precision_words = 2;
  std::size_t exact_threshold = 1;
};

// Fills in the defaults for an n-vertex run. Throws Error(Config) when eps is
// outside (0, 1/4), samples is zero, or a sample does not fit a message.
ResolvedEstimate resolve_estimate(const EstimateConfig& cfg, std::size_t n, const sim::Model& model);

// exp(-eps²·r/3).
double estimate_failure_bound(const ResolvedEstimate& r);

struct TwoHopEstimates {
  // Estimate of |N2[v] ∩ U| (closed two-hop neighborhood) for every v.
  std::vector<double> value;
  // 1 where the value was counted exactly from forwarded neighbor lists.
  std::vector<char> exact;
  sim::RoundStats stats;
};

// Every u in U draws r mean-1 exponentials; two relay-min steps give each v
// the per-sample minimum over N2[v] ∩ U and the estimate r / Σ minima.
// Low-degree vertices instead receive their neighbors' U-lists and count.
TwoHopEstimates estimate_2hop_counts(const Graph& g, std::span<const Vertex> U,
                                     const EstimateConfig& cfg = {}, std::uint64_t seed = 0,
                                     const sim::Model& model = {}, const sim::RunOptions& run = {});

struct MdsOptions {
  sim::Model model;
  std::uint64_t seed = 0;
  EstimateConfig estimate;
  sim::RunOptions run;
  // Consecutive phases without a new member before giving up.
  std::size_t stall_cap = 8;
};

struct MdsPhase {
  std::vector<Vertex> uncovered;  // at the start of the phase
  std::vector<double> estimate;   // C_v estimate per vertex
  std::vector<char> exact;
  std::vector<Vertex> candidates;
  std::vector<Vertex> joined;
  sim::RoundStats stats;
};

struct MdsRun {
  Solution solution;
  sim::RoundStats stats;
  std::vector<MdsPhase> phases;
};

// O(log Δ)-approximate dominating set of G² simulated on G. Each phase
// estimates C_v, rounds it up to a power of two, makes the 4-hop maxima
// candidates, lets every uncovered vertex vote for the lowest-ranked
// candidate within two hops and admits candidates whose estimated tally is
// at least C_v/8. Throws Error(Connectivity) for a disconnected graph and
// Error(Nontermination) after stall_cap phases without progress.
MdsRun g2mds_logd(const Graph& g, const MdsOptions& options = {});

// H_k = 1 + 1/2 + ... + 1/k.
double harmonic_number(std::size_t k);

}  // namespace powergraph
