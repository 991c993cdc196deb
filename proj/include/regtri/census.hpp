#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "regtri/graph.hpp"
#include "regtri/numeric.hpp"

namespace regtri {

// Per-edge triangle counts, aligned with g.edges().
struct EdgeTriangleTable {
    std::vector<Edge> edges;
    std::vector<std::uint32_t> t;
    std::int64_t triangle_total = 0;

    std::map<std::uint32_t, std::uint64_t> histogram() const;
};

std::int64_t count_triangles(const RegularGraph& g);
EdgeTriangleTable edge_triangle_table(const RegularGraph& g);

// Number of k-node cliques; k >= 3 required (BadK). Counts are exact.
std::int64_t count_k_cliques(const RegularGraph& g, std::uint32_t k);

// Largest possible triangle count over d-regular graphs on n nodes:
// C(d,2) * n / 3. Requires n >= d+1 so a d-regular graph exists at all.
Rational t_max(std::uint32_t n, std::uint32_t d);
// k-clique analogue: C(d,k-1) * n / k.
Rational t_k_max(std::uint32_t n, std::uint32_t d, std::uint32_t k);

// True iff v lies in some (d+1)-clique of g.
bool node_in_kplus1_clique(const RegularGraph& g, std::uint32_t v);

} // namespace regtri
