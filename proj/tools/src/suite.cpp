#include "powergraph_cli/suite.hpp"

#include <atomic>
#include <exception>
#include <thread>

#include "powergraph/errors.hpp"
#include "powergraph/random.hpp"

namespace powergraph::cli {

Graph matrix_graph(std::uint64_t seed) {
  return connected_gnp(8 + seed % 9, seed % 2 ? 0.4 : 0.2, seed);
}

Graph weighted_matrix_graph(std::uint64_t seed) { return with_random_weights(matrix_graph(seed), 16, seed); }

Graph centralized_graph(std::uint64_t seed) {
  const std::size_t n = 4 + seed % 11;
  switch (seed % 4) {
    case 0:
      return random_tree(n, seed);
    case 1:
      return connected_gnp(n, 0.15, seed);
    case 2:
      return connected_gnp(n, 0.3, seed);
    default:
      return connected_gnp(n, 0.5, seed);
  }
}

Graph mds_graph(std::uint64_t seed) {
  const std::size_t n = 2 + seed % 13;
  switch (seed % 3) {
    case 0:
      return random_tree(n, seed);
    case 1:
      return connected_gnp(n, 0.25, seed);
    default:
      return connected_gnp(n, 0.45, seed);
  }
}

Graph budget_graph(std::uint64_t seed) {
  return connected_gnp(24 + 4 * (seed % 11), seed % 2 ? 0.5 : 0.25, seed);
}

std::vector<Rational> matrix_eps() { return {Rational(1), Rational(1, 2), Rational(1, 3)}; }

std::vector<SweepCase> sweep_suite(std::string_view name) {
  std::size_t matrix = 50, budget = 100, central = 200, mds = 50;
  if (name == "smoke") {
    matrix = 4;
    budget = 4;
    central = 4;
    mds = 4;
  } else if (name != "acceptance") {
    fail(ErrorKind::Config, "unknown suite '" + std::string(name) + "'");
  }
  std::vector<SweepCase> cases;
  auto add = [&](std::string key, Graph g, Algo algo, std::optional<Rational> eps, std::uint64_t seed, bool opt) {
    RunRequest req;
    req.algo = algo;
    req.eps = eps;
    req.seed = seed;
    req.with_opt = opt;
    cases.push_back({std::move(key), std::move(g), req});
  };
  for (std::uint64_t s = 0; s < matrix; ++s) {
    for (const auto& eps : matrix_eps()) {
      const std::string tag = "/s" + std::to_string(s) + "/eps" + format_rational(eps);
      add("mvc" + tag, matrix_graph(s), Algo::G2mvcEps, eps, s, true);
      add("mwvc" + tag, weighted_matrix_graph(s), Algo::G2mwvcEps, eps, s, true);
    }
  }
  for (std::uint64_t s = 0; s < budget; ++s) {
    add("budget-congest/s" + std::to_string(s), budget_graph(s), Algo::G2mvcEps, Rational(1, 2), s, false);
    add("budget-clique/s" + std::to_string(s), budget_graph(s), Algo::G2mvcCc, Rational(1, 2), s, false);
  }
  for (std::uint64_t s = 0; s < central; ++s) {
    add("central/s" + std::to_string(s), centralized_graph(s), Algo::G2mvc53, std::nullopt, s, true);
  }
  for (std::uint64_t s = 0; s < mds; ++s) {
    add("mds/s" + std::to_string(s), mds_graph(s), Algo::G2mdsLogd, std::nullopt, s, true);
  }
  return cases;
}

std::vector<std::string> run_sweep(const std::vector<SweepCase>& cases, std::size_t jobs) {
  std::vector<std::string> rows(cases.size());
  std::vector<std::exception_ptr> errors(cases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < cases.size();) {
      try {
        rows[i] = csv_row(cases[i].key, run_algorithm(cases[i].graph, cases[i].request));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::max<std::size_t>(jobs, 1); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

}  // namespace powergraph::cli
