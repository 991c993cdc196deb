#pragma once

#include <cstdint>

#include "regtri/graph.hpp"
#include "regtri/numeric.hpp"

namespace regtri {

enum class BlockKind { Clique, MatchedComplement };

// A planted construction: b disjoint dense blocks plus a d-regular residual
// on the remaining m nodes. Clique blocks are K_{d+1} (d+1 nodes each);
// matched-complement blocks are K_{d+2} minus a perfect matching (d+2 nodes,
// d even).
struct PlantedSpec {
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    Rational c = 0;
    std::uint32_t b = 0;
    std::uint32_t m = 0;
    BlockKind kind = BlockKind::Clique;

    // b = ceil(c*n/(d+1)), m = n - b*(d+1).
    static PlantedSpec clique_family(std::uint32_t n, std::uint32_t d,
                                     const Rational& c);
    // b = ceil(c * t_max(n,d) / T_H) with T_H the triangle count of one
    // matched-complement block; m = n - b*(d+2).
    static PlantedSpec matched_complement_family(std::uint32_t n, std::uint32_t d,
                                                 const Rational& c);
    // Caller-chosen block count; c recorded as given.
    static PlantedSpec with_blocks(std::uint32_t n, std::uint32_t d,
                                   const Rational& c, std::uint32_t b,
                                   BlockKind kind);

    std::uint32_t block_size() const {
        return kind == BlockKind::Clique ? d + 1 : d + 2;
    }
    // Recomputes m from (n, d, b, kind); throws InfeasibleSpec /
    // ParityViolation when no graph realizes these parameters.
    void validate();
};

// Triangles in one K_{d+2}-minus-perfect-matching block:
// C(d+2,3) - d*(d+2)/2. Zero when d = 2.
std::int64_t matched_block_triangles(std::uint32_t d);

// Uniform d-regular simple graph by configuration-model rejection: pair the
// d*n half-edges uniformly, accept iff simple. Uniform over all simple
// d-regular graphs on n nodes. Throws RejectionBudgetExceeded after
// max_attempts rejected pairings.
RegularGraph sample_configuration_model(std::uint32_t n, std::uint32_t d,
                                        std::uint64_t seed,
                                        std::uint64_t max_attempts = 20000);

// Deterministic d-regular circulant on n nodes (offsets 1..d/2, plus the
// antipodal offset when d is odd). Requires d < n and d*n even.
RegularGraph circulant_graph(std::uint32_t n, std::uint32_t d);

// Apply `swaps` accepted double edge swaps (bounded attempt budget), keeping
// the graph simple and d-regular. Mixes, but makes no uniformity claim.
RegularGraph switch_randomize(const RegularGraph& start, std::uint64_t swaps,
                              std::uint64_t seed);

// Random d-regular graph for use as planted-family residual: configuration
// rejection first, falling back (when the acceptance rate is too small) to a
// circulant start randomized by double edge swaps. Not exactly uniform in the
// fallback regime; always simple and d-regular.
RegularGraph random_regular_graph(std::uint32_t n, std::uint32_t d,
                                  std::uint64_t seed);

RegularGraph plant_clique_family(const PlantedSpec& spec, std::uint64_t seed);
RegularGraph plant_matched_complement_family(const PlantedSpec& spec,
                                             std::uint64_t seed);

// Uniform permutation of {0..n-1} (Fisher-Yates).
Permutation random_permutation(std::uint32_t n, std::uint64_t seed);

} // namespace regtri
