#pragma once

#include <cstdint>
#include <vector>

#include "regtri/graph.hpp"
#include "regtri/numeric.hpp"
#include "regtri/rng.hpp"

namespace regtri {

struct BetaStage {
    double beta = 0.0;
    std::uint64_t steps = 0;
};

struct ChainConfig {
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    Rational c = 0;
    std::uint64_t seed = 0;
    // Annealing schedule; after it ends the chain switches to the restricted
    // phase (beta = 0, moves leaving the conditioning set rejected).
    std::vector<BetaStage> schedule;
    std::uint64_t restricted_steps = 0;
    std::uint64_t record_every = 1000;
    // Hard cap on total proposals before ChainTimeout if the conditioning set
    // was never reached. 0 = no cap.
    std::uint64_t max_steps = 0;

    // Geometric ramp beta: 0 -> 2*ln(n) over 10 stages, n*d*100 proposals
    // per stage.
    static std::vector<BetaStage> default_schedule(std::uint32_t n, std::uint32_t d);
    static ChainConfig defaults(std::uint32_t n, std::uint32_t d, const Rational& c,
                                std::uint64_t seed);
};

struct TraceRow {
    std::uint64_t step = 0;
    char phase = 'a';  // 'a' annealing, 'r' restricted
    double beta = 0.0;
    std::int64_t triangles = 0;
    double accept_rate = 0.0;  // over the window since the previous row
};

struct ChainTrace {
    std::vector<TraceRow> rows;
    std::uint64_t total_proposals = 0;
    std::uint64_t accepted = 0;
    std::int64_t threshold = 0;  // ceil(c * t_max)
    bool reached_threshold = false;
};

// Mutable double-edge-swap chain over simple d-regular graphs with a
// maintained triangle count.
class SwapChain {
public:
    SwapChain(const RegularGraph& start, std::uint64_t seed);

    std::int64_t triangles() const { return triangles_; }
    std::uint32_t node_count() const { return n_; }
    std::uint32_t degree() const { return d_; }

    struct Proposal {
        bool valid = false;     // 4 distinct endpoints, both new edges absent
        std::size_t e1 = 0, e2 = 0;
        Edge new1, new2;
        std::int64_t delta_t = 0;
    };

    // Draw a double edge swap: two distinct edge slots, random pairing of
    // endpoints. delta_t is the triangle-count change if applied.
    Proposal propose();

    // One Metropolis proposal at inverse temperature beta targeting
    // exp(beta * T). Returns true iff the move was applied.
    bool metropolis_step(double beta);

    // One beta=0 proposal that additionally rejects moves dropping the
    // triangle count below t_min. Returns true iff applied.
    bool restricted_step(std::int64_t t_min);

    RegularGraph snapshot() const;

private:
    void apply(const Proposal& p);
    std::int64_t common_neighbors(std::uint32_t a, std::uint32_t b) const;

    std::uint32_t n_ = 0, d_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::uint32_t>> adj_;  // sorted neighbor lists
    std::int64_t triangles_ = 0;
    Rng rng_;
};

struct SampleResult {
    RegularGraph graph;
    ChainTrace trace;
};

// Anneal from a random d-regular start, then run the restricted phase and
// return the final state, which satisfies T >= ceil(c * t_max(n,d)).
// Throws ChainTimeout if the threshold is never reached within the schedule
// plus max_steps.
SampleResult sample_conditioned(const ChainConfig& cfg);

} // namespace regtri
