#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "regtri/census.hpp"
#include "regtri/graph.hpp"
#include "regtri/numeric.hpp"

namespace regtri {

// Badness census at a given delta. An edge is delta-bad when
// 1 <= t_e <= d-1-delta*d (boundary included); a node is bad in the fixed-d
// sense when it lies in a triangle but in no (d+1)-clique, and in the
// growing-d sense when at least delta*d of its incident edges are delta-bad.
struct BadnessReport {
    Rational delta;
    std::vector<std::size_t> bad_edges;  // indices into edge_triangle_table
    std::vector<std::uint32_t> bad_nodes_fixed;
    std::vector<std::uint32_t> bad_nodes_growing;
    Rational bad_edge_fraction;
    Rational bad_node_fixed_fraction;
    Rational bad_node_growing_fraction;
};

BadnessReport classify_badness(const RegularGraph& g, const Rational& delta);

// All (d+1)-cliques, each as a sorted node list, lexicographically ordered.
std::vector<std::vector<std::uint32_t>> find_d_plus_1_cliques(const RegularGraph& g);

// g with every triangle-free edge removed. Node set unchanged; per-edge
// triangle counts are unchanged by the stripping (every triangle survives).
struct StrippedGraph {
    std::uint32_t n = 0;
    std::vector<std::vector<std::uint32_t>> adj;
    std::vector<Edge> edges;           // kept edges, sorted
    std::vector<std::uint32_t> t;      // per kept edge, t_e from the host graph

    bool has_edge(std::uint32_t a, std::uint32_t b) const;
};

StrippedGraph strip_triangle_free_edges(const RegularGraph& g);

struct DenseSpot {
    Edge seed;
    std::vector<std::uint32_t> nodes;  // sorted; |nodes| <= d+1
};

// Grow a dense spot from a good edge of the stripped graph: take the common
// neighbors reachable by good edges, add the endpoints, and verify every
// member has >= (1-4*delta)*d neighbors inside. The gate requires
// t_e >= d-1-delta*d and both endpoints good (fewer than delta*d incident
// edges with 1 <= t_e < d-1-delta*d). Throws NotAGoodEdge when the gate
// fails; returns nullopt when the candidate fails verification.
std::optional<DenseSpot> dense_spot_from_edge(const RegularGraph& g, Edge e,
                                              const Rational& delta);

struct PseudoClique {
    std::vector<std::uint32_t> nodes;  // sorted union of its spots
    std::uint64_t spot_count = 0;
};

enum class StructureMode { FixedD, GrowingD };

struct StructureReport {
    StructureMode mode = StructureMode::FixedD;
    Rational delta;                       // growing-d only
    std::vector<std::vector<std::uint32_t>> blocks;  // cliques or pseudo-cliques
    std::uint64_t spot_count = 0;         // dense spots found (growing-d)
    std::int64_t total_triangles = 0;
    std::int64_t covered_triangles = 0;   // triangles inside some block
    Rational coverage_fraction;           // covered / total, 0 when T = 0
    BadnessReport badness;
    // eps_n = log log n / log n, the fixed-d badness scale; reported only.
    double eps_n = 0.0;
    std::vector<std::string> warnings;
    // Pairwise-overlap law, overlap transitivity, block disjointness.
    bool claims_checked = false;
    bool claim_intersection = false;
    bool claim_transitivity = false;
    bool claim_disjoint = false;
    bool size_bound_ok = false;           // |K| <= (1-8delta)/(1-13delta)*(d+1)
};

// Growing-d assembly: dense spots from every good edge, merged into
// pseudo-cliques by overlap (union-find). Checks the three overlap claims and
// the size bound when delta < 1/16; emits warnings instead of checking when
// delta >= 1/16 or delta*d < 1.
StructureReport assemble_pseudo_cliques(const RegularGraph& g,
                                        const Rational& delta);

// Full report. FixedD: blocks are the (d+1)-cliques. GrowingD: blocks are
// pseudo-cliques at the given delta (required for GrowingD).
StructureReport structure_report(const RegularGraph& g, StructureMode mode,
                                 std::optional<Rational> delta = std::nullopt);

} // namespace regtri
