#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "regtri/graph.hpp"
#include "regtri/numeric.hpp"

namespace regtri {

struct EnumerationBudget {
    // Full pairing sweeps visit (d*n-1)!! leaves; refuse beyond this.
    std::uint64_t max_pairings = 35'000'000;
    // Direct graph enumeration gated by the pairing-model estimate of
    // |simple d-regular graphs on n nodes|; refuse beyond this.
    double max_graph_estimate = 5.0e7;
};

// e^{(1-d^2)/4} * (dn)! / ((dn/2)! * 2^(dn/2) * (d!)^n): the standard estimate
// of the number of labeled simple d-regular graphs, used only for budgeting.
double regular_graph_count_estimate(std::uint32_t n, std::uint32_t d);

// One complete pairing of the d*n half-edges, presented in reveal order.
// Half-edge h lives at node h/d with port label h%d+1.
struct PairingView {
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    const std::vector<Edge>* edges = nullptr;         // reveal order
    const std::vector<std::uint8_t>* phi_bits = nullptr;  // valid iff simple
    const std::vector<std::uint32_t>* partner = nullptr;  // half-edge pairing
    bool simple = false;

    PortLabeledGraph to_port_labeled() const;  // requires simple
};

struct PairingSweepCounts {
    Int total_pairings = 0;       // leaves visited, = (d*n-1)!! in full mode
    std::uint64_t simple = 0;
};

// Enumerate pairings in lexicographic reveal order. simple_only prunes any
// branch creating a loop or repeated edge (visits only simple pairings);
// otherwise every pairing is visited and flagged. The visitor may be empty.
// jobs > 1 shards the sweep by the first pairing choice; visitor calls then
// come from worker threads (per-shard order still deterministic).
PairingSweepCounts sweep_pairings(
    std::uint32_t n, std::uint32_t d, bool simple_only,
    const std::function<void(const PairingView&)>& visit,
    const EnumerationBudget& budget = {}, unsigned jobs = 1);

// One simple d-regular graph mid-enumeration. adj_mask[i] bit j <-> edge ij.
struct GraphView {
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    const std::vector<std::uint64_t>* adj_mask = nullptr;
    std::int64_t triangles = 0;

    RegularGraph materialize() const;
};

// Enumerate every labeled simple d-regular graph on n nodes exactly once
// (lowest-deficient-node completion order). Returns the count.
std::uint64_t enumerate_regular_graphs(
    std::uint32_t n, std::uint32_t d,
    const std::function<void(const GraphView&)>& visit,
    const EnumerationBudget& budget = {});

struct EnumerationResult {
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    Int total_pairings = 0;
    std::uint64_t simple_pairings = 0;
    std::uint64_t graph_count = 0;
    // simple_pairings == graph_count * (d!)^n.
    bool pairing_graph_identity = false;
    std::map<std::int64_t, std::uint64_t> count_by_triangles;
    // Reveal profile (bit k of the key = k-th revealed edge) -> number of
    // simple pairings mapping to it.
    std::map<std::uint32_t, std::uint64_t> phi_histogram;
};

// Preimage sizes of the reveal map over simple pairings at (n,d), keyed by
// profile bits (bit k of the key = k-th revealed edge).
std::map<std::uint32_t, std::uint64_t> phi_preimage_histogram(
    std::uint32_t n, std::uint32_t d, const EnumerationBudget& budget = {},
    unsigned jobs = 1);

// Full census at (n,d): pairing totals, graph count, triangle distribution,
// and the phi preimage histogram. Needs a full pairing sweep, so the
// max_pairings budget applies.
EnumerationResult enumerate_full(std::uint32_t n, std::uint32_t d,
                                 const EnumerationBudget& budget = {},
                                 unsigned jobs = 1);

// |{simple d-regular g on n nodes : T(g) >= ceil(c * t_max(n,d))}|.
std::uint64_t exact_conditioned_count(std::uint32_t n, std::uint32_t d,
                                      const Rational& c,
                                      const EnumerationBudget& budget = {});

// Same with k-cliques >= ceil(c * t_k_max(n,d,k)).
std::uint64_t exact_k_clique_conditioned_count(std::uint32_t n, std::uint32_t d,
                                               const Rational& c, std::uint32_t k,
                                               const EnumerationBudget& budget = {});

// |{simple d-regular g on n nodes with no connected component equal to
// K_{d+1}}|; the residual count that makes planted lower bounds injective,
// hence certified.
std::uint64_t exact_clique_component_free_count(std::uint32_t n, std::uint32_t d,
                                                const EnumerationBudget& budget = {});

} // namespace regtri
