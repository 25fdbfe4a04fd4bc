#pragma once

#include <vector>

#include "powergraph/graph.hpp"
#include "powergraph/mvc_distributed.hpp"

namespace powergraph {

struct PhaseTrace {
  // Cover vertices added in parts 1..3, in the order they were taken.
  std::vector<Vertex> V1, V2, V3;
  // Vertices that left V' in each part (the V_i plus those dropped at degree 0).
  std::vector<Vertex> W1, W2, W3;
  std::size_t s1 = 0, s2 = 0, s3 = 0;
  std::vector<Vertex> R;       // V' after part 1, sorted
  std::vector<Vertex> Rprime;  // V' after part 2, sorted
  // Part-2 degree-3 steps whose stated preconditions did not hold.
  std::size_t precondition_failures = 0;
};

struct Mvc53Result {
  Solution solution;
  PhaseTrace trace;
};

// The three-part algorithm on an arbitrary graph `h` standing in for G^2.
// The solution kind is VC1 (a cover of h itself).
Mvc53Result mvc53(const Graph& h);

// 5/3-approximate cover of square(g). Part 1 removes G^2-triangles greedily in
// lexicographic order, part 2 removes vertices of degree 1 to 3 (lowest degree
// first, smallest id on ties), part 3 takes both ends of a maximal matching.
Mvc53Result g2mvc_53(const Graph& g);

// Phase I with eps = 1/2 in CONGEST, then the leader covers H with the
// 5/3 algorithm instead of solving it exactly.
MvcRun g2mvc_hybrid(const Graph& g, const MvcOptions& options = {});

}  // namespace powergraph
