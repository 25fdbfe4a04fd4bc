#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "powergraph/exact.hpp"
#include "powergraph/graph.hpp"
#include "powergraph/rational.hpp"

namespace powergraph {

enum class Family {
  MvcBase,
  MvcSquare,
  MwvcSquare,
  MdsBase,
  MdsSquareExact,
  MwdsSquareApprox,
  MdsSquareApprox,
};

// Tags: mvc-base, mvc-sq, mwvc-sq, mds-base, mds-sq-exact, mwds-sq-approx,
// mds-sq-approx.
const char* to_string(Family family);
// Throws Error(Parse) for an unknown tag.
Family parse_family(std::string_view tag);

// Input bits; x_ij (1-based i, j over a side of length s) is bit (i-1)·s + (j-1).
using Bits = std::vector<std::uint8_t>;

// Accepts a 0x-prefixed hex string (bit 0 is the least significant bit of the
// last digit) or a plain hex string; "0" means all zero. Throws Error(Parse)
// on bad digits and Error(Input) when a set bit lies at or beyond `length`.
Bits parse_bits(std::string_view text, std::size_t length);
// Lowercase hex with 0x prefix, shortest form.
std::string format_bits(const Bits& bits);
// True when no index has x_i = y_i = 1.
bool disjoint(const Bits& x, const Bits& y);

enum class GadgetKind {
  Point,   // single zero-weight vertex
  Path3,   // dangling or shared 3-vertex path
  Path5,   // dangling or shared 5-vertex path
  Merged,  // branches [1]-[2] sharing the path [3]-[4]-[5]
};

const char* to_string(GadgetKind kind);

struct Gadget {
  GadgetKind kind = GadgetKind::Path3;
  bool shared = false;  // hangs off a row vertex rather than replacing an edge
  // path[0] is index 1. For Merged this is the common [3], [4], [5].
  std::vector<Vertex> path;
  // Endpoints of the replaced edge, or the single row vertex.
  std::vector<Vertex> attach;
  // Merged only: {[1], [2], vertex [1] hangs off}.
  std::vector<std::array<Vertex, 3>> branches;

  bool operator==(const Gadget&) const = default;
};

struct SetSystem {
  std::size_t ell = 0;  // universe {1..ell}; element e is bit e-1
  std::size_t T = 0;
  std::size_t r = 0;
  std::vector<std::uint64_t> sets;

  bool operator==(const SetSystem&) const = default;
};

// Every choice of min(r, T) distinct indices, each taken as S_i or its
// complement, leaves some element uncovered.
bool has_covering_property(const SetSystem& s);

// Rejection-samples fair random subsets until the covering property holds.
// Throws Error(Domain) for ell outside [1, 64], T = 0 or r = 0, and
// Error(Generation) once `max_tries` systems have been rejected.
SetSystem gen_set_system(std::size_t ell, std::size_t T, std::size_t r, std::uint64_t seed,
                         std::size_t max_tries = 100000);

struct LowerBoundParams {
  std::size_t k = 0;  // rows of the bit-gadget families
  std::size_t T = 0;  // rows of the set-gadget families
  std::size_t ell = 0;
  std::size_t r = 0;
  std::uint64_t seed = 0;

  bool operator==(const LowerBoundParams&) const = default;
};

struct LowerBoundInstance {
  Family family = Family::MvcBase;
  LowerBoundParams params;
  Bits x, y;
  Graph graph;
  ProblemKind problem = ProblemKind::VC1;
  std::vector<std::string> names;
  std::vector<char> alice;  // 1 for V_A
  std::vector<Edge> cut;    // edges with one endpoint on each side, sorted
  std::size_t cut_cap = 0;
  std::vector<Edge> x_edges, y_edges;
  // Optimum is at most `yes_at_most` when x and y intersect and at least
  // `no_at_least` when they are disjoint.
  Rational yes_at_most{0};
  Rational no_at_least{0};
  std::vector<Gadget> gadgets;
  std::optional<SetSystem> sets;
};

// Bit-gadget families. k must be a power of two, at least 2; x and y have k²
// bits. Throw Error(Domain) / Error(Input) otherwise.
LowerBoundInstance gen_mvc_base(std::size_t k, const Bits& x, const Bits& y);
LowerBoundInstance gen_mwvc_square(std::size_t k, const Bits& x, const Bits& y);
LowerBoundInstance gen_mvc_square(std::size_t k, const Bits& x, const Bits& y);
LowerBoundInstance gen_mds_base(std::size_t k, const Bits& x, const Bits& y);
LowerBoundInstance gen_mds_square_exact(std::size_t k, const Bits& x, const Bits& y);

// Set-gadget families; x and y have T² bits and the set system comes from
// gen_set_system(ell, T, r, seed).
LowerBoundInstance gen_mwds_square_approx(std::size_t T, std::size_t ell, std::size_t r, const Bits& x,
                                          const Bits& y, std::uint64_t seed = 0);
LowerBoundInstance gen_mds_square_approx_unweighted(std::size_t T, std::size_t ell, std::size_t r,
                                                    const Bits& x, const Bits& y, std::uint64_t seed = 0);

// Dispatch on the family tag using the matching fields of `params`.
LowerBoundInstance generate(Family family, const LowerBoundParams& params, const Bits& x, const Bits& y);
// Bits per input string for the family and parameters.
std::size_t input_length(Family family, const LowerBoundParams& params);

struct TransformResult {
  Graph graph;  // original vertices keep their ids; gadget vertices follow
  std::vector<Gadget> gadgets;
};

// Hangs a path of `length` (3 or 5) new vertices off every edge, the head
// adjacent to both endpoints. Weights are dropped. Throws Error(Domain) for
// another length.
TransformResult dangling_transform(const Graph& g, std::size_t length, bool delete_original);

// Replaces every edge by a head [1] adjacent to both endpoints with its own
// [2]; all [2]s meet a single common path [3]-[4]-[5]. Throws Error(Domain)
// for an edgeless graph.
TransformResult merged_dangling_transform(const Graph& g);

// Rewrites a feasible cover of h² (kind VC2 or DS2) so that every gadget is
// in normal form: Path3 holds {1, 2}, Point vertices are taken (VC2); Path5
// and Merged hold [3] and never [4], [5] or a shared/branch [2], and a
// dangling Path5 holds only [3] (DS2). The value never increases for unit
// weights outside Point and Merged [3]. Throws Error(Contract) on an
// infeasible cover and Error(Domain) for another kind.
std::vector<Vertex> normalize_cover(const Graph& h, std::span<const Gadget> gadgets, ProblemKind kind,
                                    std::span<const Vertex> cover);

struct FamilyReport {
  Rational value{0};
  Rational yes_at_most{0};
  Rational no_at_least{0};
  bool predicate = false;  // value <= yes_at_most
  bool disj = false;
  bool agree = false;      // predicate == !disj, and the gap holds when disj
  std::size_t cut_size = 0;
  std::size_t cut_cap = 0;
  bool partition_ok = false;
};

// Partition sanity alone: recorded cut equals the crossing edges and stays
// within the cap, x-edges lie inside V_A and y-edges inside V_B.
bool partition_ok(const LowerBoundInstance& inst);

// Solves the instance exactly and checks it against its thresholds. Throws
// Error(Size) when the graph exceeds the oracle cap.
FamilyReport verify_family(const LowerBoundInstance& inst, const ExactOptions& options = {512});

}  // namespace powergraph
