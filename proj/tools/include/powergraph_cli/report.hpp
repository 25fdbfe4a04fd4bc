#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "powergraph/graph.hpp"
#include "powergraph/rational.hpp"

namespace powergraph::cli {

enum class Algo {
  G2mvcEps,
  G2mwvcEps,
  G2mvcTrivial,
  G2mvcCc,
  G2mvc53,
  G2mvcHybrid,
  G2mdsLogd,
  ExactMvc2,
  ExactMds2,
};

enum class ModelChoice { Congest, Clique, Central };

const char* to_string(Algo algo);
const char* to_string(ModelChoice model);
// Throw Error(Parse) for an unknown name.
Algo parse_algo(std::string_view name);
ModelChoice parse_model(std::string_view name);

// Cover algorithms solve vc2, the rest ds2.
ProblemKind problem_of(Algo algo);
// Model used when none is requested.
ModelChoice default_model(Algo algo);

struct RunRequest {
  Algo algo = Algo::G2mvcEps;
  std::optional<ModelChoice> model;
  // Defaults to 1/2 for the cover algorithms and 1/8 (estimator) for g2mds-logd.
  std::optional<Rational> eps;
  std::uint64_t seed = 0;
  bool with_opt = false;
  std::size_t opt_cap = 64;
  std::size_t bandwidth_words = 8;
  bool timing = false;
};

struct RunReport {
  std::string algo;
  std::string model;
  std::size_t n = 0;
  std::size_t m = 0;
  std::optional<Rational> eps;
  std::uint64_t seed = 0;
  std::size_t rounds = 0;
  std::size_t messages = 0;
  std::size_t max_message_bits = 0;
  std::size_t bandwidth_violations = 0;
  Rational value{0};
  bool feasible = false;
  std::optional<Rational> opt;
  std::optional<double> ratio;
  std::optional<double> wall_ms;  // only with RunRequest::timing
  std::vector<Vertex> members;
};

// Throws Error(Config) for a model the algorithm cannot run under, and
// whatever the algorithm or the optimum oracle throws.
RunReport run_algorithm(const Graph& g, const RunRequest& request);

nlohmann::ordered_json to_json(const RunReport& report);

// CSV columns, without members and timing.
std::string csv_header();
std::string csv_row(const std::string& key, const RunReport& report);

}  // namespace powergraph::cli
