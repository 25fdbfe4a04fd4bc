#include "powergraph_cli/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "powergraph/errors.hpp"
#include "powergraph/lowerbound.hpp"
#include "powergraph/random.hpp"
#include "powergraph_cli/graph_io.hpp"
#include "powergraph_cli/report.hpp"
#include "powergraph_cli/sidecar.hpp"
#include "powergraph_cli/suite.hpp"

namespace powergraph::cli {

namespace {

void error_record(std::ostream& err, std::string_view kind, const std::string& message) {
  nlohmann::ordered_json j;
  j["error"] = kind;
  j["message"] = message;
  err << j.dump() << '\n';
}

struct GenRandom {
  std::string model = "gnp";
  std::size_t n = 0;
  double p = 0.5;
  std::uint64_t seed = 0;
  std::int64_t weights = 0;
  bool connected = false;
  std::string output;
};

struct GenLb {
  std::string family;
  std::size_t k = 0, T = 0, ell = 8, r = 2;
  std::string x = "0", y = "0";
  std::uint64_t seed = 0;
  std::string output;
};

struct Run {
  std::string algo, input, eps, model;
  std::uint64_t seed = 0;
  bool with_opt = false, timing = false;
  std::size_t opt_cap = 64, bandwidth = 8;
};

struct Verify {
  std::string input, solution, kind = "vc2";
  bool lb = false;
  std::size_t cap = 512;
};

struct Sweep {
  std::string suite, output;
  std::size_t jobs = 1;
};

void emit_graph(const std::string& path, const Graph& g, std::ostream& out) {
  if (path.empty()) {
    write_graph(out, g);
  } else {
    write_graph_file(path, g);
  }
}

void do_gen_random(const GenRandom& o, std::ostream& out) {
  Graph g;
  if (o.model == "gnp") {
    if (o.p < 0 || o.p > 1) fail(ErrorKind::Config, "--p must lie in [0, 1]");
    g = o.connected ? connected_gnp(o.n, o.p, o.seed) : gnp(o.n, o.p, o.seed);
  } else if (o.model == "tree") {
    g = random_tree(o.n, o.seed);
  } else {
    fail(ErrorKind::Config, "unknown random model '" + o.model + "'");
  }
  if (o.weights < 0) fail(ErrorKind::Config, "--weights must be positive");
  if (o.weights > 0) g = with_random_weights(std::move(g), o.weights, o.seed);
  emit_graph(o.output, g, out);
}

void do_gen_lb(const GenLb& o, std::ostream& out) {
  LowerBoundParams p{.k = o.k, .T = o.T, .ell = o.ell, .r = o.r, .seed = o.seed};
  const Family family = parse_family(o.family);
  const std::size_t len = input_length(family, p);
  const auto inst = generate(family, p, parse_bits(o.x, len), parse_bits(o.y, len));
  write_instance(o.output, inst);
  nlohmann::ordered_json j;
  j["family"] = to_string(family);
  j["graph"] = o.output;
  j["sidecar"] = o.output + ".json";
  j["n"] = inst.graph.n();
  j["m"] = inst.graph.m();
  j["cut"] = inst.cut.size();
  j["gadgets"] = inst.gadgets.size();
  out << j.dump() << '\n';
}

void do_run(const Run& o, std::ostream& out) {
  RunRequest req;
  req.algo = parse_algo(o.algo);
  if (!o.model.empty()) req.model = parse_model(o.model);
  if (!o.eps.empty()) req.eps = parse_rational(o.eps);
  req.seed = o.seed;
  req.with_opt = o.with_opt;
  req.opt_cap = o.opt_cap;
  req.bandwidth_words = o.bandwidth;
  req.timing = o.timing;
  const Graph g = read_graph_file(o.input);
  out << to_json(run_algorithm(g, req)).dump() << '\n';
}

ProblemKind parse_kind(const std::string& s) {
  for (auto k : {ProblemKind::VC2, ProblemKind::DS2, ProblemKind::VC1, ProblemKind::DS1}) {
    if (s == to_string(k)) return k;
  }
  fail(ErrorKind::Parse, "unknown kind '" + s + "'");
}

void do_verify(const Verify& o, std::ostream& out) {
  nlohmann::ordered_json j;
  if (o.lb) {
    const auto inst = read_instance(o.input);
    const auto rep = verify_family(inst, {o.cap});
    j["family"] = to_string(inst.family);
    j["value"] = format_rational(rep.value);
    j["yes_at_most"] = format_rational(rep.yes_at_most);
    j["no_at_least"] = format_rational(rep.no_at_least);
    j["predicate"] = rep.predicate;
    j["disj"] = rep.disj;
    j["agree"] = rep.agree;
    j["cut"] = rep.cut_size;
    j["cut_cap"] = rep.cut_cap;
    j["partition_ok"] = rep.partition_ok;
  } else {
    if (o.solution.empty()) fail(ErrorKind::Config, "--solution is required");
    const Graph g = read_graph_file(o.input);
    const ProblemKind kind = parse_kind(o.kind);
    auto members = read_vertex_set_file(o.solution);
    const bool feasible = is_feasible(g, kind, members);
    const Solution sol = make_solution(g, kind, std::move(members));
    j["kind"] = to_string(kind);
    j["n"] = g.n();
    j["size"] = sol.members.size();
    j["value"] = to_double(sol.value);
    j["value_exact"] = format_rational(sol.value);
    j["feasible"] = feasible;
  }
  out << j.dump() << '\n';
}

void do_sweep(const Sweep& o, std::ostream& out) {
  const auto cases = sweep_suite(o.suite);
  const auto rows = run_sweep(cases, o.jobs);
  std::ofstream file;
  if (!o.output.empty()) {
    file.open(o.output);
    if (!file) fail(ErrorKind::Input, "cannot write '" + o.output + "'");
  }
  std::ostream& dst = o.output.empty() ? out : file;
  dst << csv_header() << '\n';
  for (const auto& row : rows) dst << row << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Approximation algorithms and lower-bound instances for graph squares"};
  app.name("powergraph");
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Generate instances");
  gen->require_subcommand(1);
  GenRandom gr;
  auto* random = gen->add_subcommand("random", "Random graph");
  random->add_option("--model", gr.model, "gnp | tree")->capture_default_str();
  random->add_option("--n", gr.n, "Vertex count")->required();
  random->add_option("--p", gr.p, "Edge probability")->capture_default_str();
  random->add_option("--seed", gr.seed, "Seed")->capture_default_str();
  random->add_option("--weights", gr.weights, "Integer weights in [1, max]");
  random->add_flag("--connected", gr.connected, "Resample G(n, p) until connected");
  random->add_option("-o,--output", gr.output, "Graph file (default stdout)");

  GenLb gl;
  auto* lb = gen->add_subcommand("lb", "Lower-bound instance with its JSON sidecar");
  lb->add_option("--family", gl.family, "mvc-base | mvc-sq | mwvc-sq | mds-base | mds-sq-exact | mwds-sq-approx | mds-sq-approx")
      ->required();
  lb->add_option("--k", gl.k, "Rows of the bit-gadget families (power of two)");
  lb->add_option("-T,--T", gl.T, "Rows of the set-gadget families");
  lb->add_option("--ell", gl.ell, "Set-system universe size")->capture_default_str();
  lb->add_option("--r", gl.r, "Covering parameter")->capture_default_str();
  lb->add_option("--x", gl.x, "Alice's input, hex, bit 0 = LSB")->capture_default_str();
  lb->add_option("--y", gl.y, "Bob's input, hex, bit 0 = LSB")->capture_default_str();
  lb->add_option("--seed", gl.seed, "Set-system seed")->capture_default_str();
  lb->add_option("-o,--output", gl.output, "Graph file; the sidecar is written next to it")->required();

  Run rn;
  auto* run = app.add_subcommand("run", "Run an algorithm and print a JSON report");
  run->add_option("--algo", rn.algo,
                  "g2mvc-eps | g2mwvc-eps | g2mvc-trivial | g2mvc-cc | g2mvc-53 | g2mvc-hybrid | g2mds-logd | "
                  "exact-mvc2 | exact-mds2")
      ->required();
  run->add_option("--input", rn.input, "Graph file")->required();
  run->add_option("--eps", rn.eps, "Exact rational a/b");
  run->add_option("--seed", rn.seed, "Seed")->capture_default_str();
  run->add_option("--model", rn.model, "congest | clique | central");
  run->add_flag("--with-opt", rn.with_opt, "Also solve exactly and report the ratio");
  run->add_option("--opt-cap", rn.opt_cap, "Vertex cap of the exact solver")->capture_default_str();
  run->add_option("--bandwidth", rn.bandwidth, "Words per message")->capture_default_str();
  run->add_flag("--timing", rn.timing, "Report wall_ms (output is then not reproducible)");

  Verify vf;
  auto* verify = app.add_subcommand("verify", "Check a solution, or a lower-bound instance with --lb");
  verify->add_option("--input", vf.input, "Graph file")->required();
  verify->add_option("--solution", vf.solution, "Vertex ids, whitespace separated");
  verify->add_option("--kind", vf.kind, "vc2 | ds2 | vc1 | ds1")->capture_default_str();
  verify->add_flag("--lb", vf.lb, "Solve the instance exactly against its sidecar thresholds");
  verify->add_option("--cap", vf.cap, "Vertex cap of the exact solver for --lb")->capture_default_str();

  Sweep sw;
  auto* sweep = app.add_subcommand("sweep", "Run a suite and print CSV");
  sweep->add_option("--suite", sw.suite, "acceptance | smoke")->required();
  sweep->add_option("--jobs", sw.jobs, "Worker threads")->capture_default_str();
  sweep->add_option("-o,--output", sw.output, "CSV file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    error_record(err, "usage", e.what());
    return 2;
  }

  try {
    if (random->parsed()) {
      do_gen_random(gr, out);
    } else if (lb->parsed()) {
      do_gen_lb(gl, out);
    } else if (run->parsed()) {
      do_run(rn, out);
    } else if (verify->parsed()) {
      do_verify(vf, out);
    } else if (sweep->parsed()) {
      do_sweep(sw, out);
    }
  } catch (const Error& e) {
    error_record(err, to_string(e.kind()), e.what());
    return 1;
  } catch (const std::exception& e) {
    error_record(err, "internal", e.what());
    return 1;
  }
  return 0;
}

}  // namespace powergraph::cli
