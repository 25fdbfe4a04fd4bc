#pragma once

#include <string>

#include "json.hpp"
#include "powergraph/lowerbound.hpp"

namespace powergraph::cli {

// {family, params, x, y, problem, thresholds, partition, cut, cut_cap,
//  x_edges, y_edges, gadgets, sets?, names}
nlohmann::ordered_json sidecar_json(const LowerBoundInstance& inst);

// Rebuilds the instance from a sidecar and its graph. Throws Error(Parse)
// on missing or mistyped fields.
LowerBoundInstance instance_from_sidecar(const nlohmann::json& j, Graph graph);

// Writes the graph to `path` and the sidecar to `path` + ".json".
void write_instance(const std::string& path, const LowerBoundInstance& inst);
LowerBoundInstance read_instance(const std::string& path);

}  // namespace powergraph::cli
