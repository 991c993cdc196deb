#include "regtri/census.hpp"

#include <algorithm>

namespace regtri {

namespace {

// Sorted-list intersection size; lists are ascending neighbor vectors.
std::uint32_t common_count(const std::vector<std::uint32_t>& a,
                           const std::vector<std::uint32_t>& b) {
    std::uint32_t count = 0;
    auto ia = a.begin(), ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) ++ia;
        else if (*ib < *ia) ++ib;
        else { ++count; ++ia; ++ib; }
    }
    return count;
}

} // namespace

std::map<std::uint32_t, std::uint64_t> EdgeTriangleTable::histogram() const {
    std::map<std::uint32_t, std::uint64_t> h;
    for (auto te : t) ++h[te];
    return h;
}

EdgeTriangleTable edge_triangle_table(const RegularGraph& g) {
    EdgeTriangleTable table;
    table.edges = g.edges();
    table.t.reserve(table.edges.size());
    std::uint64_t incidence_sum = 0;
    for (const auto& e : table.edges) {
        std::uint32_t te = common_count(g.neighbors(e.u), g.neighbors(e.v));
        table.t.push_back(te);
        incidence_sum += te;
    }
    // Every triangle contributes to exactly three edges.
    if (incidence_sum % 3 != 0)
        throw InvariantViolation("edge-triangle incidences not divisible by 3");
    table.triangle_total = static_cast<std::int64_t>(incidence_sum / 3);
    return table;
}

std::int64_t count_triangles(const RegularGraph& g) {
    std::uint64_t incidence_sum = 0;
    for (const auto& e : g.edges())
        incidence_sum += common_count(g.neighbors(e.u), g.neighbors(e.v));
    return static_cast<std::int64_t>(incidence_sum / 3);
}

namespace {

// Extend the clique `clique` by nodes from `cand` (all adjacent to every
// clique member, all greater than the last member), counting completions of
// size k.
std::int64_t extend_cliques(const RegularGraph& g,
                            std::vector<std::uint32_t>& clique,
                            const std::vector<std::uint32_t>& cand,
                            std::uint32_t k) {
    if (clique.size() == k) return 1;
    std::int64_t total = 0;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        std::uint32_t v = cand[i];
        // Remaining candidates must stay adjacent to v.
        std::vector<std::uint32_t> next;
        for (std::size_t j = i + 1; j < cand.size(); ++j)
            if (g.has_edge(v, cand[j])) next.push_back(cand[j]);
        if (clique.size() + 1 + next.size() < k) continue;
        clique.push_back(v);
        total += extend_cliques(g, clique, next, k);
        clique.pop_back();
    }
    return total;
}

} // namespace

std::int64_t count_k_cliques(const RegularGraph& g, std::uint32_t k) {
    if (k < 3) throw BadK("k must be >= 3, got " + std::to_string(k));
    if (k > g.degree() + 1) return 0;  // a k-clique needs degree >= k-1
    std::int64_t total = 0;
    std::vector<std::uint32_t> clique;
    for (std::uint32_t v = 0; v < g.node_count(); ++v) {
        std::vector<std::uint32_t> cand;
        for (auto w : g.neighbors(v))
            if (w > v) cand.push_back(w);
        clique.push_back(v);
        total += extend_cliques(g, clique, cand, k);
        clique.pop_back();
    }
    return total;
}

Rational t_max(std::uint32_t n, std::uint32_t d) {
    if (n < d + 1 && !(n == 0 && d == 0))
        throw Error("t_max needs n >= d+1");
    return Rational(binomial(d, 2)) * n / 3;
}

Rational t_k_max(std::uint32_t n, std::uint32_t d, std::uint32_t k) {
    if (k < 3) throw BadK("k must be >= 3, got " + std::to_string(k));
    if (n < d + 1 && !(n == 0 && d == 0))
        throw Error("t_k_max needs n >= d+1");
    return Rational(binomial(d, k - 1)) * n / k;
}

bool node_in_kplus1_clique(const RegularGraph& g, std::uint32_t v) {
    if (v >= g.node_count()) throw Error("node out of range");
    // v is in a (d+1)-clique iff its whole closed neighborhood is one, since
    // any (d+1)-clique containing v uses all d of its neighbors.
    const auto& nb = g.neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
            if (!g.has_edge(nb[i], nb[j])) return false;
    return true;
}

} // namespace regtri
