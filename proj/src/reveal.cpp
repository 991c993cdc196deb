#include "regtri/reveal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/dynamic_bitset.hpp>

#include "regtri/census.hpp"
#include "regtri/rng.hpp"

namespace regtri {

std::uint32_t RevealProfile::weight() const {
    std::uint32_t w = 0;
    for (auto b : bits) w += b;
    return w;
}

std::string RevealProfile::rle() const {
    std::ostringstream os;
    std::size_t i = 0;
    std::uint8_t expect = 0;  // runs alternate starting with a 0-run
    bool first = true;
    while (i < bits.size()) {
        std::size_t run = 0;
        while (i + run < bits.size() && bits[i + run] == expect) ++run;
        os << (first ? "" : ",") << run;
        first = false;
        i += run;
        expect ^= 1;
    }
    if (first) return "0";
    return os.str();
}

std::vector<Edge> configuration_order(const PortLabeledGraph& g) {
    const std::uint32_t n = g.graph().node_count();
    std::vector<Edge> order;
    order.reserve(g.graph().edge_count());
    // Reveal position of an edge is (min endpoint, port label there); walking
    // nodes in order and labels in order visits edges exactly in that key
    // order, skipping edges whose smaller endpoint came earlier.
    for (std::uint32_t v = 0; v < n; ++v)
        for (auto w : g.ports_of(v))
            if (w > v) order.push_back(Edge{v, w});
    return order;
}

RevealProfile encode_phi(const PortLabeledGraph& g) {
    const std::uint32_t n = g.graph().node_count();
    std::vector<boost::dynamic_bitset<>> adj(n, boost::dynamic_bitset<>(n));
    RevealProfile p;
    auto order = configuration_order(g);
    p.bits.reserve(order.size());
    for (const auto& e : order) {
        p.bits.push_back((adj[e.u] & adj[e.v]).any() ? 1 : 0);
        adj[e.u].set(e.v);
        adj[e.v].set(e.u);
    }
    return p;
}

std::int64_t phi_weight_fast(const RegularGraph& g) {
    // The bit of edge (u,v), u < v, is set iff some common neighbor h has
    // h < u: by reveal time both (h,u) and (h,v) are already present exactly
    // when h precedes both endpoints.
    std::int64_t w = 0;
    for (const auto& e : g.edges()) {
        const auto& a = g.neighbors(e.u);
        const auto& b = g.neighbors(e.v);
        auto ia = a.begin(), ib = b.begin();
        while (ia != a.end() && ib != b.end() && *ia < e.u && *ib < e.u) {
            if (*ia < *ib) ++ia;
            else if (*ib < *ia) ++ib;
            else { ++w; break; }
        }
    }
    return w;
}

Rational expected_phi_exact(const RegularGraph& g) {
    auto table = edge_triangle_table(g);
    Rational sum = 0;
    for (auto te : table.t)
        if (te) sum += Rational(te, te + 2);
    return sum;
}

Rational t_c_value(std::uint32_t n, std::uint32_t d, const Rational& c) {
    if (c < 0 || c > 1) throw Error("c must lie in [0,1]");
    if (d == 0) return 0;
    return c * Rational(static_cast<std::uint64_t>(d) * n, 2) * Rational(d - 1, d + 1);
}

namespace {

// Edges that lie on at least one triangle, with their triangle partners;
// everything a relabeling sweep needs.
struct Incidences {
    std::vector<std::uint32_t> u, v;
    std::vector<std::uint32_t> begin;  // offsets into thirds, size+1
    std::vector<std::uint32_t> thirds;
};

Incidences triangle_incidences(const RegularGraph& g) {
    Incidences inc;
    for (const auto& e : g.edges()) {
        const auto& a = g.neighbors(e.u);
        const auto& b = g.neighbors(e.v);
        std::vector<std::uint32_t> common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                              std::back_inserter(common));
        if (common.empty()) continue;
        inc.u.push_back(e.u);
        inc.v.push_back(e.v);
        inc.begin.push_back(static_cast<std::uint32_t>(inc.thirds.size()));
        inc.thirds.insert(inc.thirds.end(), common.begin(), common.end());
    }
    inc.begin.push_back(static_cast<std::uint32_t>(inc.thirds.size()));
    return inc;
}

// Weight of the relabeled graph where node i gets rank[i].
std::int64_t ranked_weight(const Incidences& inc,
                           const std::vector<std::uint32_t>& rank) {
    std::int64_t w = 0;
    for (std::size_t e = 0; e < inc.u.size(); ++e) {
        std::uint32_t lim = std::min(rank[inc.u[e]], rank[inc.v[e]]);
        for (std::uint32_t k = inc.begin[e]; k < inc.begin[e + 1]; ++k) {
            if (rank[inc.thirds[k]] < lim) {
                ++w;
                break;
            }
        }
    }
    return w;
}

void require_cap(const RegularGraph& g, std::uint32_t cap) {
    if (g.node_count() > cap)
        throw CapExceeded("exact permutation sweep capped at n = " +
                          std::to_string(cap) + ", got n = " +
                          std::to_string(g.node_count()));
}

} // namespace

std::map<std::int64_t, Int> phi_weight_counts_over_permutations(
    const RegularGraph& g, std::uint32_t cap) {
    require_cap(g, cap);
    auto inc = triangle_incidences(g);
    std::vector<std::uint32_t> rank = identity_permutation(g.node_count());
    std::vector<std::uint64_t> counts(g.edge_count() + 1, 0);
    do {
        ++counts[static_cast<std::size_t>(ranked_weight(inc, rank))];
    } while (std::next_permutation(rank.begin(), rank.end()));
    std::map<std::int64_t, Int> out;
    for (std::size_t w = 0; w < counts.size(); ++w)
        if (counts[w]) out[static_cast<std::int64_t>(w)] = counts[w];
    return out;
}

ExactPermutationMean mean_phi_over_permutations_exact(const RegularGraph& g,
                                                      std::uint32_t cap) {
    auto counts = phi_weight_counts_over_permutations(g, cap);
    Int total = factorial(g.node_count());
    Int sum = 0;
    for (const auto& [w, cnt] : counts) sum += Int(w) * cnt;
    return ExactPermutationMean{Rational(sum, total), total};
}

MonteCarloEstimate mean_phi_over_permutations_mc(const RegularGraph& g,
                                                 std::uint64_t samples,
                                                 std::uint64_t seed) {
    if (samples == 0) throw Error("need at least one sample");
    auto inc = triangle_incidences(g);
    Rng rng(seed, 0x6d65616eULL);
    std::vector<std::uint32_t> rank = identity_permutation(g.node_count());
    double sum = 0, sumsq = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        rng.shuffle(rank);
        auto w = static_cast<double>(ranked_weight(inc, rank));
        sum += w;
        sumsq += w * w;
    }
    MonteCarloEstimate est;
    est.samples = samples;
    est.mean = sum / static_cast<double>(samples);
    if (samples > 1) {
        double var = (sumsq - sum * sum / static_cast<double>(samples)) /
                     static_cast<double>(samples - 1);
        est.std_error = var > 0 ? std::sqrt(var / static_cast<double>(samples)) : 0.0;
    }
    return est;
}

namespace {

Rational success_threshold(const RegularGraph& g, const Rational& c) {
    Rational need = c * t_max(g.node_count(), g.degree());
    if (Rational(count_triangles(g)) < need)
        throw ConstraintUnmet("graph has fewer than c * t_max triangles");
    return t_c_value(g.node_count(), g.degree(), c) - 1;
}

} // namespace

Rational permutation_success_fraction_exact(const RegularGraph& g,
                                            const Rational& c,
                                            std::uint32_t cap) {
    Rational threshold = success_threshold(g, c);
    auto counts = phi_weight_counts_over_permutations(g, cap);
    Int total = factorial(g.node_count());
    Int good = 0;
    for (const auto& [w, cnt] : counts)
        if (Rational(w) >= threshold) good += cnt;
    return Rational(good, total);
}

MonteCarloEstimate permutation_success_fraction_mc(const RegularGraph& g,
                                                   const Rational& c,
                                                   std::uint64_t samples,
                                                   std::uint64_t seed) {
    if (samples == 0) throw Error("need at least one sample");
    Rational threshold = success_threshold(g, c);
    // Integer weights make "w >= T_c - 1" the same as "w >= ceil(T_c - 1)".
    auto min_w = ceil_rational(threshold).convert_to<std::int64_t>();
    auto inc = triangle_incidences(g);
    Rng rng(seed, 0x73756363ULL);
    std::vector<std::uint32_t> rank = identity_permutation(g.node_count());
    std::uint64_t good = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        rng.shuffle(rank);
        if (ranked_weight(inc, rank) >= min_w) ++good;
    }
    MonteCarloEstimate est;
    est.samples = samples;
    est.mean = static_cast<double>(good) / static_cast<double>(samples);
    est.std_error =
        std::sqrt(std::max(est.mean * (1.0 - est.mean), 0.0) /
                  static_cast<double>(samples));
    return est;
}

} // namespace regtri
