#pragma once

#include <cstddef>

#include "powergraph/graph.hpp"

namespace powergraph {

struct ExactOptions {
  // Inputs with more vertices are rejected with Error(Size).
  std::size_t vertex_cap = 64;
};

// Minimum (weight) vertex cover of g itself. Deterministic.
Solution exact_mvc(const Graph& g, const ExactOptions& options = {});
// Minimum (weight) dominating set of g itself. Deterministic.
Solution exact_mds(const Graph& g, const ExactOptions& options = {});

// Same problems on square(g); the solution kind is VC2 / DS2.
Solution exact_mvc2(const Graph& g, const ExactOptions& options = {});
Solution exact_mds2(const Graph& g, const ExactOptions& options = {});

}  // namespace powergraph
