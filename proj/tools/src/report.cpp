#include "powergraph_cli/report.hpp"

#include <array>
#include <chrono>
#include <sstream>
#include <utility>

#include "powergraph/errors.hpp"
#include "powergraph/exact.hpp"
#include "powergraph/mds_distributed.hpp"
#include "powergraph/mvc_centralized.hpp"
#include "powergraph/mvc_distributed.hpp"

namespace powergraph::cli {

namespace {

constexpr std::array<std::pair<Algo, const char*>, 9> kAlgos{{
    {Algo::G2mvcEps, "g2mvc-eps"},
    {Algo::G2mwvcEps, "g2mwvc-eps"},
    {Algo::G2mvcTrivial, "g2mvc-trivial"},
    {Algo::G2mvcCc, "g2mvc-cc"},
    {Algo::G2mvc53, "g2mvc-53"},
    {Algo::G2mvcHybrid, "g2mvc-hybrid"},
    {Algo::G2mdsLogd, "g2mds-logd"},
    {Algo::ExactMvc2, "exact-mvc2"},
    {Algo::ExactMds2, "exact-mds2"},
}};

constexpr std::array<std::pair<ModelChoice, const char*>, 3> kModels{{
    {ModelChoice::Congest, "congest"},
    {ModelChoice::Clique, "clique"},
    {ModelChoice::Central, "central"},
}};

bool allowed(Algo algo, ModelChoice m) {
  switch (algo) {
    case Algo::G2mvcEps:
    case Algo::G2mwvcEps:
    case Algo::G2mdsLogd:
      return m != ModelChoice::Central;
    case Algo::G2mvcCc:
      return m == ModelChoice::Clique;
    case Algo::G2mvcHybrid:
      return m == ModelChoice::Congest;
    case Algo::G2mvcTrivial:
      return true;
    case Algo::G2mvc53:
    case Algo::ExactMvc2:
    case Algo::ExactMds2:
      return m == ModelChoice::Central;
  }
  return false;
}

sim::Model sim_model(ModelChoice m, std::size_t bandwidth) {
  sim::Model model;
  model.variant = m == ModelChoice::Clique ? sim::Variant::Clique : sim::Variant::Congest;
  model.bandwidth_words = bandwidth;
  return model;
}

std::string rational_or_empty(const std::optional<Rational>& q) { return q ? format_rational(*q) : ""; }

}  // namespace

const char* to_string(Algo algo) {
  for (auto [a, name] : kAlgos) {
    if (a == algo) return name;
  }
  return "?";
}

const char* to_string(ModelChoice model) {
  for (auto [m, name] : kModels) {
    if (m == model) return name;
  }
  return "?";
}

Algo parse_algo(std::string_view name) {
  for (auto [a, n] : kAlgos) {
    if (name == n) return a;
  }
  fail(ErrorKind::Parse, "unknown algorithm '" + std::string(name) + "'");
}

ModelChoice parse_model(std::string_view name) {
  for (auto [m, n] : kModels) {
    if (name == n) return m;
  }
  fail(ErrorKind::Parse, "unknown model '" + std::string(name) + "'");
}

ProblemKind problem_of(Algo algo) {
  return algo == Algo::G2mdsLogd || algo == Algo::ExactMds2 ? ProblemKind::DS2 : ProblemKind::VC2;
}

ModelChoice default_model(Algo algo) {
  switch (algo) {
    case Algo::G2mvcCc:
      return ModelChoice::Clique;
    case Algo::G2mvc53:
    case Algo::ExactMvc2:
    case Algo::ExactMds2:
    case Algo::G2mvcTrivial:
      return ModelChoice::Central;
    default:
      return ModelChoice::Congest;
  }
}

RunReport run_algorithm(const Graph& g, const RunRequest& req) {
  const ModelChoice model = req.model.value_or(default_model(req.algo));
  if (!allowed(req.algo, model)) {
    fail(ErrorKind::Config, std::string(to_string(req.algo)) + " does not run in the " + to_string(model) + " model");
  }
  RunReport rep;
  rep.algo = to_string(req.algo);
  rep.model = to_string(model);
  rep.n = g.n();
  rep.m = g.m();
  rep.seed = req.seed;

  MvcOptions mvc;
  mvc.model = sim_model(model, req.bandwidth_words);
  mvc.seed = req.seed;
  const Rational cover_eps = req.eps.value_or(Rational(1, 2));

  const auto start = std::chrono::steady_clock::now();
  Solution sol;
  sim::RoundStats stats;
  auto take = [&](MvcRun run) {
    sol = std::move(run.solution);
    stats = run.stats;
  };
  switch (req.algo) {
    case Algo::G2mvcEps:
      rep.eps = cover_eps;
      take(g2mvc_eps(g, cover_eps, mvc));
      break;
    case Algo::G2mwvcEps:
      rep.eps = cover_eps;
      take(g2mwvc_eps(g, cover_eps, mvc));
      break;
    case Algo::G2mvcCc:
      rep.eps = cover_eps;
      take(g2mvc_cc_voting(g, cover_eps, mvc));
      break;
    case Algo::G2mvcHybrid:
      take(g2mvc_hybrid(g, mvc));
      break;
    case Algo::G2mvcTrivial:
      sol = g2mvc_trivial(g);
      break;
    case Algo::G2mvc53:
      sol = g2mvc_53(g).solution;
      break;
    case Algo::G2mdsLogd: {
      MdsOptions mds;
      mds.model = mvc.model;
      mds.seed = req.seed;
      if (req.eps) mds.estimate.epsilon = *req.eps;
      rep.eps = mds.estimate.epsilon;
      auto run = g2mds_logd(g, mds);
      sol = std::move(run.solution);
      stats = run.stats;
      break;
    }
    case Algo::ExactMvc2:
      sol = exact_mvc2(g, {req.opt_cap});
      break;
    case Algo::ExactMds2:
      sol = exact_mds2(g, {req.opt_cap});
      break;
  }
  const auto stop = std::chrono::steady_clock::now();

  rep.rounds = stats.rounds;
  rep.messages = stats.messages;
  rep.max_message_bits = stats.max_message_bits;
  rep.bandwidth_violations = stats.violations;
  rep.value = sol.value;
  rep.members = sol.members;
  rep.feasible = is_feasible(g, problem_of(req.algo), sol.members);
  if (req.with_opt) {
    const ExactOptions cap{req.opt_cap};
    rep.opt = problem_of(req.algo) == ProblemKind::VC2 ? exact_mvc2(g, cap).value : exact_mds2(g, cap).value;
    if (rep.opt->numerator() != 0) {
      rep.ratio = to_double(rep.value / *rep.opt);
    } else if (rep.value.numerator() == 0) {
      rep.ratio = 1.0;
    }
  }
  if (req.timing) rep.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return rep;
}

nlohmann::ordered_json to_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["algo"] = r.algo;
  j["model"] = r.model;
  j["n"] = r.n;
  j["m"] = r.m;
  j["eps"] = r.eps ? nlohmann::ordered_json(format_rational(*r.eps)) : nlohmann::ordered_json(nullptr);
  j["seed"] = r.seed;
  j["rounds"] = r.rounds;
  j["messages"] = r.messages;
  j["max_message_bits"] = r.max_message_bits;
  j["bandwidth_violations"] = r.bandwidth_violations;
  j["value"] = to_double(r.value);
  j["value_exact"] = format_rational(r.value);
  j["feasible"] = r.feasible;
  if (r.opt) {
    j["opt"] = to_double(*r.opt);
    j["opt_exact"] = format_rational(*r.opt);
  }
  if (r.ratio) j["ratio"] = *r.ratio;
  j["wall_ms"] = r.wall_ms ? nlohmann::ordered_json(*r.wall_ms) : nlohmann::ordered_json(nullptr);
  j["members"] = r.members;
  return j;
}

std::string csv_header() {
  return "key,algo,model,n,m,eps,seed,rounds,messages,max_message_bits,bandwidth_violations,value,feasible,opt,"
         "ratio";
}

std::string csv_row(const std::string& key, const RunReport& r) {
  std::ostringstream out;
  out << key << ',' << r.algo << ',' << r.model << ',' << r.n << ',' << r.m << ',' << rational_or_empty(r.eps)
      << ',' << r.seed << ',' << r.rounds << ',' << r.messages << ',' << r.max_message_bits << ','
      << r.bandwidth_violations << ',' << format_rational(r.value) << ',' << (r.feasible ? "true" : "false") << ','
      << rational_or_empty(r.opt) << ',';
  if (r.ratio) out << nlohmann::json(*r.ratio).dump();
  return out.str();
}

}  // namespace powergraph::cli
