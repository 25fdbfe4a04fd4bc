#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace powergraph::cli {

// Entry point of the harness. Results go to `out`; failures print a single
// JSON line {"error": kind, "message": ...} to `err` and return nonzero
// (2 for bad usage, 1 otherwise).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace powergraph::cli
