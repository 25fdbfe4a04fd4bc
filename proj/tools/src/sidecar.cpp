#include "powergraph_cli/sidecar.hpp"

#include <fstream>

#include "powergraph/errors.hpp"
#include "powergraph_cli/graph_io.hpp"

namespace powergraph::cli {

namespace {

using ojson = nlohmann::ordered_json;

ojson edge_list(const std::vector<Edge>& edges) {
  ojson a = ojson::array();
  for (auto [u, v] : edges) a.push_back({u, v});
  return a;
}

std::vector<Edge> edges_from(const nlohmann::json& a) {
  std::vector<Edge> out;
  for (const auto& e : a) out.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
  return out;
}

GadgetKind gadget_kind(const std::string& s) {
  for (auto k : {GadgetKind::Point, GadgetKind::Path3, GadgetKind::Path5, GadgetKind::Merged}) {
    if (s == to_string(k)) return k;
  }
  fail(ErrorKind::Parse, "unknown gadget kind '" + s + "'");
}

ProblemKind problem_kind(const std::string& s) {
  for (auto k : {ProblemKind::VC2, ProblemKind::DS2, ProblemKind::VC1, ProblemKind::DS1}) {
    if (s == to_string(k)) return k;
  }
  fail(ErrorKind::Parse, "unknown problem '" + s + "'");
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  do {
    s.insert(s.begin(), digits[v & 15]);
    v >>= 4;
  } while (v);
  return "0x" + s;
}

}  // namespace

ojson sidecar_json(const LowerBoundInstance& inst) {
  ojson j;
  j["family"] = to_string(inst.family);
  ojson params;
  if (inst.family == Family::MwdsSquareApprox || inst.family == Family::MdsSquareApprox) {
    params["T"] = inst.params.T;
    params["ell"] = inst.params.ell;
    params["r"] = inst.params.r;
    params["seed"] = inst.params.seed;
  } else {
    params["k"] = inst.params.k;
  }
  j["params"] = params;
  j["x"] = format_bits(inst.x);
  j["y"] = format_bits(inst.y);
  j["bits"] = inst.x.size();
  j["problem"] = to_string(inst.problem);
  j["thresholds"] = {{"yes_at_most", format_rational(inst.yes_at_most)},
                     {"no_at_least", format_rational(inst.no_at_least)}};
  ojson alice = ojson::array(), bob = ojson::array();
  for (Vertex v = 0; v < inst.alice.size(); ++v) (inst.alice[v] ? alice : bob).push_back(v);
  j["partition"] = {{"alice", alice}, {"bob", bob}};
  j["cut"] = edge_list(inst.cut);
  j["cut_cap"] = inst.cut_cap;
  j["x_edges"] = edge_list(inst.x_edges);
  j["y_edges"] = edge_list(inst.y_edges);
  ojson gadgets = ojson::array();
  for (const auto& gd : inst.gadgets) {
    ojson g;
    g["kind"] = to_string(gd.kind);
    g["shared"] = gd.shared;
    g["path"] = gd.path;
    g["attach"] = gd.attach;
    if (gd.kind == GadgetKind::Merged) {
      ojson br = ojson::array();
      for (const auto& b : gd.branches) br.push_back({b[0], b[1], b[2]});
      g["branches"] = br;
    }
    gadgets.push_back(g);
  }
  j["gadgets"] = gadgets;
  if (inst.sets) {
    ojson sets = ojson::array();
    for (auto s : inst.sets->sets) sets.push_back(hex64(s));
    j["sets"] = sets;
  }
  j["names"] = inst.names;
  return j;
}

LowerBoundInstance instance_from_sidecar(const nlohmann::json& j, Graph graph) {
  try {
    LowerBoundInstance inst;
    inst.family = parse_family(j.at("family").get<std::string>());
    const auto& p = j.at("params");
    if (p.contains("k")) {
      inst.params.k = p.at("k").get<std::size_t>();
    } else {
      inst.params.T = p.at("T").get<std::size_t>();
      inst.params.ell = p.at("ell").get<std::size_t>();
      inst.params.r = p.at("r").get<std::size_t>();
      inst.params.seed = p.at("seed").get<std::uint64_t>();
    }
    const auto bits = j.at("bits").get<std::size_t>();
    inst.x = parse_bits(j.at("x").get<std::string>(), bits);
    inst.y = parse_bits(j.at("y").get<std::string>(), bits);
    inst.problem = problem_kind(j.at("problem").get<std::string>());
    inst.yes_at_most = parse_rational(j.at("thresholds").at("yes_at_most").get<std::string>());
    inst.no_at_least = parse_rational(j.at("thresholds").at("no_at_least").get<std::string>());
    inst.alice.assign(graph.n(), 0);
    for (const auto& v : j.at("partition").at("alice")) {
      const auto id = v.get<Vertex>();
      if (id >= graph.n()) fail(ErrorKind::Parse, "partition vertex out of range");
      inst.alice[id] = 1;
    }
    inst.cut = edges_from(j.at("cut"));
    inst.cut_cap = j.at("cut_cap").get<std::size_t>();
    inst.x_edges = edges_from(j.at("x_edges"));
    inst.y_edges = edges_from(j.at("y_edges"));
    for (const auto& g : j.at("gadgets")) {
      Gadget gd;
      gd.kind = gadget_kind(g.at("kind").get<std::string>());
      gd.shared = g.at("shared").get<bool>();
      gd.path = g.at("path").get<std::vector<Vertex>>();
      gd.attach = g.at("attach").get<std::vector<Vertex>>();
      if (g.contains("branches")) {
        for (const auto& b : g.at("branches")) gd.branches.push_back({b.at(0), b.at(1), b.at(2)});
      }
      inst.gadgets.push_back(std::move(gd));
    }
    if (j.contains("sets")) {
      SetSystem s{inst.params.ell, inst.params.T, inst.params.r, {}};
      for (const auto& h : j.at("sets")) s.sets.push_back(std::stoull(h.get<std::string>(), nullptr, 16));
      inst.sets = std::move(s);
    }
    inst.names = j.at("names").get<std::vector<std::string>>();
    inst.graph = std::move(graph);
    return inst;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, std::string("sidecar: ") + e.what());
  }
}

void write_instance(const std::string& path, const LowerBoundInstance& inst) {
  write_graph_file(path, inst.graph);
  std::ofstream out(path + ".json");
  if (!out) fail(ErrorKind::Input, "cannot write '" + path + ".json'");
  out << sidecar_json(inst).dump(1) << '\n';
}

LowerBoundInstance read_instance(const std::string& path) {
  Graph g = read_graph_file(path);
  std::ifstream in(path + ".json");
  if (!in) fail(ErrorKind::Input, "cannot open '" + path + ".json'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, std::string("sidecar: ") + e.what());
  }
  return instance_from_sidecar(j, std::move(g));
}

}  // namespace powergraph::cli
