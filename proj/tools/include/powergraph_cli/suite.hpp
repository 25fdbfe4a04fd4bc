#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "powergraph/graph.hpp"
#include "powergraph_cli/report.hpp"

namespace powergraph::cli {

// Connected G(n, p) with n = 8 + seed mod 9 and p alternating 0.2 / 0.4.
Graph matrix_graph(std::uint64_t seed);
// matrix_graph with integer weights uniform in [1, 16].
Graph weighted_matrix_graph(std::uint64_t seed);
// Connected graphs on 4..14 vertices: trees and G(n, p) at three densities.
Graph centralized_graph(std::uint64_t seed);
// Connected graphs on 2..14 vertices for the dominating-set runs.
Graph mds_graph(std::uint64_t seed);

// Connected G(n, p) for the round budgets: n = 24..64 in steps of 4, p
// alternating 0.25 / 0.5, dense enough for the voting threshold.
Graph budget_graph(std::uint64_t seed);

// The eps values of the approximation matrix: 1, 1/2, 1/3.
std::vector<Rational> matrix_eps();

struct SweepCase {
  std::string key;
  Graph graph;
  RunRequest request;
};

// "acceptance" or "smoke"; throws Error(Config) otherwise.
std::vector<SweepCase> sweep_suite(std::string_view name);

// Runs every case (on `jobs` threads) and returns CSV rows in case order.
std::vector<std::string> run_sweep(const std::vector<SweepCase>& cases, std::size_t jobs);

}  // namespace powergraph::cli
