#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "regtri/graph.hpp"
#include "regtri/numeric.hpp"

namespace regtri {

// 0/1 reveal profile of a port-labeled graph: one bit per edge in
// configuration order, set iff the edge closes a triangle at the moment it is
// revealed.
struct RevealProfile {
    std::vector<std::uint8_t> bits;

    std::uint32_t weight() const;
    // Run lengths alternating 0-runs and 1-runs, starting with the (possibly
    // empty) leading 0-run, e.g. 000111 -> "3,3" and 110 -> "0,2,1".
    std::string rle() const;
};

// Reveal order of the edges of g*: sort by smaller endpoint, ties broken by
// the port label at that endpoint. Every edge appears once.
std::vector<Edge> configuration_order(const PortLabeledGraph& g);

RevealProfile encode_phi(const PortLabeledGraph& g);

// Weight of encode_phi for any port labeling of g: the number of edges (i,j)
// having a common neighbor h with h < min(i,j). Label-independent.
std::int64_t phi_weight_fast(const RegularGraph& g);

// Expectation of phi_weight_fast over a uniformly random relabeling of g:
// sum over edges of t_e / (t_e + 2), exact.
Rational expected_phi_exact(const RegularGraph& g);

struct ExactPermutationMean {
    Rational mean;
    Int permutations;
};
// Averages phi_weight_fast over all n! relabelings. Throws CapExceeded when
// n exceeds the cap (default 9, ~362880 sweeps).
ExactPermutationMean mean_phi_over_permutations_exact(const RegularGraph& g,
                                                      std::uint32_t cap = 9);

// Distribution of the phi weight over all n! relabelings: weight -> number
// of permutations attaining it. Same cap as the exact mean.
std::map<std::int64_t, Int> phi_weight_counts_over_permutations(
    const RegularGraph& g, std::uint32_t cap = 9);

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
};
MonteCarloEstimate mean_phi_over_permutations_mc(const RegularGraph& g,
                                                 std::uint64_t samples,
                                                 std::uint64_t seed);

// Fraction of relabelings sigma with phi-weight >= T_c - 1 where
// T_c = c * (d*n/2) * (d-1)/(d+1). Requires the graph itself to have at least
// c * t_max(n,d) triangles (ConstraintUnmet otherwise).
Rational permutation_success_fraction_exact(const RegularGraph& g,
                                            const Rational& c,
                                            std::uint32_t cap = 9);
MonteCarloEstimate permutation_success_fraction_mc(const RegularGraph& g,
                                                   const Rational& c,
                                                   std::uint64_t samples,
                                                   std::uint64_t seed);

// Threshold T_c as an exact rational.
Rational t_c_value(std::uint32_t n, std::uint32_t d, const Rational& c);

} // namespace regtri
