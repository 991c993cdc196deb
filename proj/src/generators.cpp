#include "regtri/generators.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "regtri/census.hpp"
#include "regtri/rng.hpp"

namespace regtri {

std::int64_t matched_block_triangles(std::uint32_t d) {
    if (d % 2 != 0) throw InfeasibleSpec("matched-complement blocks need even d");
    Int t = binomial(d + 2, 3) - Int(d) * (d + 2) / 2;
    return t.convert_to<std::int64_t>();
}

PlantedSpec PlantedSpec::clique_family(std::uint32_t n, std::uint32_t d,
                                       const Rational& c) {
    if (c < 0 || c > 1) throw InfeasibleSpec("c must lie in [0,1]");
    PlantedSpec s;
    s.n = n;
    s.d = d;
    s.c = c;
    s.kind = BlockKind::Clique;
    Int b = ceil_rational(c * n / (d + 1));
    s.b = b.convert_to<std::uint32_t>();
    s.validate();
    return s;
}

PlantedSpec PlantedSpec::matched_complement_family(std::uint32_t n, std::uint32_t d,
                                                   const Rational& c) {
    if (c < 0 || c > 1) throw InfeasibleSpec("c must lie in [0,1]");
    PlantedSpec s;
    s.n = n;
    s.d = d;
    s.c = c;
    s.kind = BlockKind::MatchedComplement;
    std::int64_t per_block = matched_block_triangles(d);
    Rational need = c * t_max(n, d);
    if (need > 0 && per_block == 0)
        throw InfeasibleSpec("blocks carry no triangles at d = " + std::to_string(d));
    Int b = per_block == 0 ? Int(0) : ceil_rational(need / per_block);
    s.b = b.convert_to<std::uint32_t>();
    s.validate();
    return s;
}

PlantedSpec PlantedSpec::with_blocks(std::uint32_t n, std::uint32_t d,
                                     const Rational& c, std::uint32_t b,
                                     BlockKind kind) {
    PlantedSpec s;
    s.n = n;
    s.d = d;
    s.c = c;
    s.b = b;
    s.kind = kind;
    s.validate();
    return s;
}

void PlantedSpec::validate() {
    if (kind == BlockKind::MatchedComplement && d % 2 != 0)
        throw InfeasibleSpec("matched-complement blocks need even d");
    std::uint64_t used = static_cast<std::uint64_t>(b) * block_size();
    if (used > n)
        throw InfeasibleSpec("blocks need " + std::to_string(used) +
                             " nodes, have " + std::to_string(n));
    std::uint64_t residual = n - used;
    if (residual > 0 && residual < static_cast<std::uint64_t>(d) + 1)
        throw InfeasibleSpec("residual of " + std::to_string(residual) +
                             " nodes cannot be " + std::to_string(d) + "-regular");
    if (residual * d % 2 != 0)
        throw ParityViolation("residual d*m is odd");
    m = static_cast<std::uint32_t>(residual);
}

namespace {

// One uniform pairing of the d*n half-edges; returns edges as node pairs
// (loops/multi-edges possible).
std::vector<Edge> random_pairing(std::uint32_t n, std::uint32_t d, Rng& rng,
                                 bool& simple) {
    std::vector<std::uint32_t> half(static_cast<std::size_t>(n) * d);
    std::iota(half.begin(), half.end(), 0u);
    rng.shuffle(half);
    std::vector<Edge> edges;
    edges.reserve(half.size() / 2);
    simple = true;
    std::vector<std::uint64_t> seen;  // packed u*n+v keys of edges so far
    seen.reserve(half.size() / 2);
    for (std::size_t i = 0; i < half.size(); i += 2) {
        std::uint32_t u = half[i] / d, v = half[i + 1] / d;
        if (u == v) {
            simple = false;
            continue;
        }
        if (u > v) std::swap(u, v);
        seen.push_back(static_cast<std::uint64_t>(u) * n + v);
        edges.push_back(Edge{u, v});
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) simple = false;
    return edges;
}

} // namespace

RegularGraph sample_configuration_model(std::uint32_t n, std::uint32_t d,
                                        std::uint64_t seed,
                                        std::uint64_t max_attempts) {
    if (static_cast<std::uint64_t>(n) * d % 2 != 0)
        throw ParityViolation("d*n must be even");
    if (d >= n && !(n == 0 && d == 0)) throw DegreeViolation("need d < n");
    Rng rng(seed, 0x636f6e66ULL);
    for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
        bool simple = false;
        auto edges = random_pairing(n, d, rng, simple);
        if (simple) return RegularGraph::from_edges(n, d, std::move(edges));
    }
    throw RejectionBudgetExceeded("no simple pairing in " +
                                  std::to_string(max_attempts) + " attempts");
}

RegularGraph circulant_graph(std::uint32_t n, std::uint32_t d) {
    if (static_cast<std::uint64_t>(n) * d % 2 != 0)
        throw ParityViolation("d*n must be even");
    if (d >= n) throw DegreeViolation("need d < n");
    std::vector<Edge> edges;
    for (std::uint32_t off = 1; off <= d / 2; ++off)
        for (std::uint32_t v = 0; v < n; ++v)
            edges.push_back(make_edge(v, (v + off) % n));
    if (d % 2 == 1)  // n is even here; add the antipodal matching
        for (std::uint32_t v = 0; v < n / 2; ++v)
            edges.push_back(make_edge(v, v + n / 2));
    return RegularGraph::from_edges(n, d, std::move(edges));
}

namespace {

// Randomize a graph by double edge swaps; preserves regularity and
// simplicity only (makes no uniformity claim).
RegularGraph switch_randomize(const RegularGraph& start, Rng& rng,
                              std::uint64_t swaps) {
    auto edges = start.edges();
    const std::uint32_t n = start.node_count();
    auto key = [n](std::uint32_t u, std::uint32_t v) {
        if (u > v) std::swap(u, v);
        return static_cast<std::uint64_t>(u) * n + v;
    };
    std::unordered_set<std::uint64_t> present;
    present.reserve(edges.size() * 2);
    for (const auto& e : edges) present.insert(key(e.u, e.v));
    std::uint64_t done = 0, attempts = 0, limit = swaps * 200 + 1000;
    while (done < swaps && attempts < limit) {
        ++attempts;
        std::size_t i = static_cast<std::size_t>(rng.below(edges.size()));
        std::size_t j = static_cast<std::size_t>(rng.below(edges.size()));
        if (i == j) continue;
        auto [a, b] = edges[i];
        auto [x, y] = edges[j];
        if (rng.below(2)) std::swap(x, y);
        if (a == x || a == y || b == x || b == y) continue;
        if (present.count(key(a, x)) || present.count(key(b, y))) continue;
        present.erase(key(a, b));
        present.erase(key(x, y));
        present.insert(key(a, x));
        present.insert(key(b, y));
        edges[i] = make_edge(a, x);
        edges[j] = make_edge(b, y);
        ++done;
    }
    return RegularGraph::from_edges(n, start.degree(), std::move(edges));
}

} // namespace

RegularGraph switch_randomize(const RegularGraph& start, std::uint64_t swaps,
                              std::uint64_t seed) {
    Rng rng(seed, 0x73776368ULL);
    return switch_randomize(start, rng, swaps);
}

RegularGraph random_regular_graph(std::uint32_t n, std::uint32_t d,
                                  std::uint64_t seed) {
    // Configuration rejection is uniform but its acceptance rate decays like
    // exp(-(d*d-1)/4); beyond d = 5 or so fall straight through to switching.
    if (d <= 5) {
        try {
            return sample_configuration_model(n, d, seed, 2000);
        } catch (const RejectionBudgetExceeded&) {
        }
    }
    Rng rng(seed, 0x72727267ULL);
    std::uint64_t m = static_cast<std::uint64_t>(n) * d / 2;
    return switch_randomize(circulant_graph(n, d), rng, m * 20);
}

namespace {

std::vector<Edge> block_edges_clique(const std::vector<std::uint32_t>& nodes) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            edges.push_back(make_edge(nodes[i], nodes[j]));
    return edges;
}

// K_{d+2} on the block nodes minus the matching (0,1), (2,3), ...
std::vector<Edge> block_edges_matched(const std::vector<std::uint32_t>& nodes) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            if (j == i + 1 && i % 2 == 0) continue;  // matched pair
            edges.push_back(make_edge(nodes[i], nodes[j]));
        }
    return edges;
}

RegularGraph plant_family(PlantedSpec spec, std::uint64_t seed) {
    spec.validate();
    // A uniformly random node partition: blocks first, residual last.
    Permutation where = random_permutation(spec.n, seed);
    std::vector<Edge> edges;
    const std::uint32_t s = spec.block_size();
    for (std::uint32_t blk = 0; blk < spec.b; ++blk) {
        std::vector<std::uint32_t> nodes(where.begin() + blk * s,
                                         where.begin() + (blk + 1) * s);
        auto be = spec.kind == BlockKind::Clique ? block_edges_clique(nodes)
                                                 : block_edges_matched(nodes);
        edges.insert(edges.end(), be.begin(), be.end());
    }
    if (spec.m > 0) {
        RegularGraph residual = random_regular_graph(spec.m, spec.d, seed ^ 0x9e3779b9ULL);
        const std::uint32_t base = spec.b * s;
        for (const auto& e : residual.edges())
            edges.push_back(make_edge(where[base + e.u], where[base + e.v]));
    }
    return RegularGraph::from_edges(spec.n, spec.d, std::move(edges));
}

} // namespace

RegularGraph plant_clique_family(const PlantedSpec& spec, std::uint64_t seed) {
    if (spec.kind != BlockKind::Clique)
        throw InfeasibleSpec("spec is not a clique family");
    return plant_family(spec, seed);
}

RegularGraph plant_matched_complement_family(const PlantedSpec& spec,
                                             std::uint64_t seed) {
    if (spec.kind != BlockKind::MatchedComplement)
        throw InfeasibleSpec("spec is not a matched-complement family");
    return plant_family(spec, seed);
}

Permutation random_permutation(std::uint32_t n, std::uint64_t seed) {
    Permutation p = identity_permutation(n);
    Rng rng(seed, 0x7065726dULL);
    rng.shuffle(p);
    return p;
}

} // namespace regtri
