#pragma once

#include <cstdint>
#include <random>

#include "powergraph/graph.hpp"

namespace powergraph {

std::uint64_t splitmix64(std::uint64_t x);

// Independent stream for (seed, stream) pairs, e.g. node i of a run.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream);

// Uniform double in (0, 1] built from 53 random bits.
double uniform_open_closed(std::mt19937_64& rng);
// Uniform integer in [0, bound) by rejection; bound > 0.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);
// Exponential with mean 1 by inverse CDF.
double exponential(std::mt19937_64& rng);

// Erdős–Rényi G(n, p).
Graph gnp(std::size_t n, double p, std::uint64_t seed);
// G(n, p) resampled (with derived seeds) until connected; n >= 1.
Graph connected_gnp(std::size_t n, double p, std::uint64_t seed);
// Uniform random labelled tree via a Prüfer sequence.
Graph random_tree(std::size_t n, std::uint64_t seed);
// Integer weights drawn uniformly from [1, max_weight].
Graph with_random_weights(Graph g, std::int64_t max_weight, std::uint64_t seed);

}  // namespace powergraph
