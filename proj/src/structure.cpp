#include "regtri/structure.hpp"

#include <algorithm>
#include <cmath>

#include <boost/dynamic_bitset.hpp>

namespace regtri {

BadnessReport classify_badness(const RegularGraph& g, const Rational& delta) {
    if (delta < 0 || delta > 1) throw Error("delta must lie in [0,1]");
    auto table = edge_triangle_table(g);
    const std::uint32_t n = g.node_count(), d = g.degree();
    BadnessReport r;
    r.delta = delta;
    // bad edge: 1 <= t_e <= d-1-delta*d, boundary included.
    Rational bad_max = Rational(d) - 1 - delta * d;
    std::vector<std::uint32_t> bad_at_node(n, 0);
    std::vector<std::uint8_t> on_triangle(n, 0);
    for (std::size_t i = 0; i < table.edges.size(); ++i) {
        std::uint32_t te = table.t[i];
        if (te >= 1) {
            on_triangle[table.edges[i].u] = 1;
            on_triangle[table.edges[i].v] = 1;
            if (Rational(te) <= bad_max) {
                r.bad_edges.push_back(i);
                ++bad_at_node[table.edges[i].u];
                ++bad_at_node[table.edges[i].v];
            }
        }
    }
    Rational node_threshold = delta * d;
    for (std::uint32_t v = 0; v < n; ++v) {
        if (on_triangle[v] && !node_in_kplus1_clique(g, v))
            r.bad_nodes_fixed.push_back(v);
        if (d > 0 && Rational(bad_at_node[v]) >= node_threshold && bad_at_node[v] > 0)
            r.bad_nodes_growing.push_back(v);
    }
    std::uint64_t m = table.edges.size();
    r.bad_edge_fraction = m ? Rational(r.bad_edges.size(), m) : Rational(0);
    r.bad_node_fixed_fraction = n ? Rational(r.bad_nodes_fixed.size(), n) : Rational(0);
    r.bad_node_growing_fraction =
        n ? Rational(r.bad_nodes_growing.size(), n) : Rational(0);
    return r;
}

std::vector<std::vector<std::uint32_t>> find_d_plus_1_cliques(const RegularGraph& g) {
    std::vector<std::vector<std::uint32_t>> cliques;
    std::vector<std::uint8_t> used(g.node_count(), 0);
    for (std::uint32_t v = 0; v < g.node_count(); ++v) {
        // A (d+1)-clique in a d-regular graph is a whole component, so its
        // members are exactly the closed neighborhood of any one of them.
        if (used[v] || !node_in_kplus1_clique(g, v)) continue;
        std::vector<std::uint32_t> clique = g.neighbors(v);
        clique.push_back(v);
        std::sort(clique.begin(), clique.end());
        for (auto w : clique) used[w] = 1;
        cliques.push_back(std::move(clique));
    }
    std::sort(cliques.begin(), cliques.end());
    return cliques;
}

bool StrippedGraph::has_edge(std::uint32_t a, std::uint32_t b) const {
    if (a == b) return false;
    return std::binary_search(adj[a].begin(), adj[a].end(), b);
}

StrippedGraph strip_triangle_free_edges(const RegularGraph& g) {
    auto table = edge_triangle_table(g);
    StrippedGraph sg;
    sg.n = g.node_count();
    sg.adj.assign(sg.n, {});
    for (std::size_t i = 0; i < table.edges.size(); ++i) {
        if (table.t[i] == 0) continue;
        sg.edges.push_back(table.edges[i]);
        sg.t.push_back(table.t[i]);
        sg.adj[table.edges[i].u].push_back(table.edges[i].v);
        sg.adj[table.edges[i].v].push_back(table.edges[i].u);
    }
    for (auto& nb : sg.adj) std::sort(nb.begin(), nb.end());
    return sg;
}

namespace {

// Spot-pipeline edge/node classes. Unlike classify_badness, the good-edge
// test keeps the boundary: an edge with t_e exactly d-1-delta*d seeds spots,
// and node badness counts only strictly-below-boundary edges.
struct SpotContext {
    const RegularGraph* g = nullptr;
    StrippedGraph sg;
    Rational delta;
    Rational boundary;                      // d-1-delta*d
    std::vector<std::uint8_t> edge_good;    // per sg edge: t_e >= boundary
    std::vector<std::uint8_t> node_good;    // < delta*d strictly-bad edges
    std::vector<std::vector<std::uint32_t>> good_adj;  // good edges only
};

SpotContext make_spot_context(const RegularGraph& g, const Rational& delta) {
    if (delta < 0 || delta > 1) throw Error("delta must lie in [0,1]");
    SpotContext ctx;
    ctx.g = &g;
    ctx.sg = strip_triangle_free_edges(g);
    ctx.delta = delta;
    const std::uint32_t d = g.degree();
    ctx.boundary = Rational(d) - 1 - delta * d;
    ctx.edge_good.resize(ctx.sg.edges.size());
    std::vector<std::uint32_t> strict_bad(g.node_count(), 0);
    ctx.good_adj.assign(g.node_count(), {});
    for (std::size_t i = 0; i < ctx.sg.edges.size(); ++i) {
        bool good = Rational(ctx.sg.t[i]) >= ctx.boundary;
        ctx.edge_good[i] = good ? 1 : 0;
        const auto& e = ctx.sg.edges[i];
        if (good) {
            ctx.good_adj[e.u].push_back(e.v);
            ctx.good_adj[e.v].push_back(e.u);
        } else {
            ++strict_bad[e.u];
            ++strict_bad[e.v];
        }
    }
    ctx.node_good.resize(g.node_count());
    Rational node_threshold = delta * d;
    for (std::uint32_t v = 0; v < g.node_count(); ++v)
        ctx.node_good[v] = Rational(strict_bad[v]) < node_threshold ||
                                   strict_bad[v] == 0
                               ? 1
                               : 0;
    for (auto& nb : ctx.good_adj) std::sort(nb.begin(), nb.end());
    return ctx;
}

// Common elements of two sorted vectors.
std::vector<std::uint32_t> sorted_common(const std::vector<std::uint32_t>& a,
                                         const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(out));
    return out;
}

// Candidate spot from a gate-passing edge; nullopt when verification fails.
std::optional<DenseSpot> grow_spot(const SpotContext& ctx, std::size_t edge_idx) {
    const Edge e = ctx.sg.edges[edge_idx];
    const std::uint32_t d = ctx.g->degree();
    std::vector<std::uint32_t> nodes =
        sorted_common(ctx.good_adj[e.u], ctx.good_adj[e.v]);
    nodes.push_back(e.u);
    nodes.push_back(e.v);
    std::sort(nodes.begin(), nodes.end());
    if (nodes.size() > static_cast<std::size_t>(d) + 1) return std::nullopt;
    // Every member needs >= (1-4*delta)*d neighbors inside, in the stripped
    // graph.
    Rational need = (Rational(1) - 4 * ctx.delta) * d;
    for (auto x : nodes) {
        std::uint32_t deg_in = 0;
        for (auto y : nodes)
            if (y != x && ctx.sg.has_edge(x, y)) ++deg_in;
        if (Rational(deg_in) < need) return std::nullopt;
    }
    return DenseSpot{e, std::move(nodes)};
}

struct UnionFind {
    std::vector<std::uint32_t> parent;

    explicit UnionFind(std::size_t size) : parent(size) {
        for (std::size_t i = 0; i < size; ++i) parent[i] = static_cast<std::uint32_t>(i);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

double eps_n_scale(std::uint32_t n) {
    if (n < 3) return 0.0;
    double ln = std::log(static_cast<double>(n));
    double lln = std::log(ln);
    return lln > 0 ? lln / ln : 0.0;
}

// Triangles with all three nodes in one block, where block_of[v] is the
// block id or UINT32_MAX.
std::int64_t covered_triangle_count(const RegularGraph& g,
                                    const std::vector<std::uint32_t>& block_of) {
    std::int64_t covered = 0;
    for (const auto& e : g.edges()) {
        if (block_of[e.u] == UINT32_MAX || block_of[e.u] != block_of[e.v]) continue;
        auto common = sorted_common(g.neighbors(e.u), g.neighbors(e.v));
        for (auto w : common)
            if (w > e.v && block_of[w] == block_of[e.u]) ++covered;
    }
    return covered;
}

} // namespace

std::optional<DenseSpot> dense_spot_from_edge(const RegularGraph& g, Edge e,
                                              const Rational& delta) {
    if (e.u == e.v || std::max(e.u, e.v) >= g.node_count())
        throw Error("not an edge of the graph");
    g.edge_index(e.u, e.v);  // throws if absent
    auto ctx = make_spot_context(g, delta);
    if (e.u > e.v) std::swap(e.u, e.v);
    auto it = std::lower_bound(ctx.sg.edges.begin(), ctx.sg.edges.end(), e);
    if (it == ctx.sg.edges.end() || !(*it == e))
        throw NotAGoodEdge("edge lies on no triangle");
    std::size_t idx = static_cast<std::size_t>(it - ctx.sg.edges.begin());
    if (!ctx.edge_good[idx])
        throw NotAGoodEdge("edge triangle count below d-1-delta*d");
    if (!ctx.node_good[e.u] || !ctx.node_good[e.v])
        throw NotAGoodEdge("an endpoint has too many bad edges");
    return grow_spot(ctx, idx);
}

StructureReport assemble_pseudo_cliques(const RegularGraph& g,
                                        const Rational& delta) {
    auto ctx = make_spot_context(g, delta);
    const std::uint32_t n = g.node_count(), d = g.degree();
    StructureReport rep;
    rep.mode = StructureMode::GrowingD;
    rep.delta = delta;
    rep.eps_n = eps_n_scale(n);
    rep.badness = classify_badness(g, delta);
    rep.total_triangles = count_triangles(g);

    if (Rational(d) * delta < 1)
        rep.warnings.push_back("delta*d < 1: spot recovery from good edges is "
                               "not guaranteed at this scale");
    bool small_delta = delta < Rational(1, 16);
    if (!small_delta)
        rep.warnings.push_back("delta >= 1/16: overlap transitivity and the "
                               "pseudo-clique size bound are not guaranteed");

    // Dense spots from every gate-passing edge, deduplicated by node set.
    std::vector<std::vector<std::uint32_t>> spots;
    for (std::size_t i = 0; i < ctx.sg.edges.size(); ++i) {
        const auto& e = ctx.sg.edges[i];
        if (!ctx.edge_good[i] || !ctx.node_good[e.u] || !ctx.node_good[e.v])
            continue;
        if (auto spot = grow_spot(ctx, i)) spots.push_back(std::move(spot->nodes));
    }
    std::sort(spots.begin(), spots.end());
    spots.erase(std::unique(spots.begin(), spots.end()), spots.end());
    rep.spot_count = spots.size();

    std::vector<boost::dynamic_bitset<>> masks;
    masks.reserve(spots.size());
    for (const auto& s : spots) {
        boost::dynamic_bitset<> m(n);
        for (auto v : s) m.set(v);
        masks.push_back(std::move(m));
    }

    // Pairwise-overlap law: intersecting spots share >= (1-8*delta)*d nodes.
    // Intersecting pairs are found through shared nodes, so disjoint spots
    // never pay a comparison.
    Rational overlap_need = (Rational(1) - 8 * delta) * d;
    UnionFind uf(spots.size());
    std::vector<std::vector<std::uint32_t>> at_node(n);
    for (std::size_t i = 0; i < spots.size(); ++i)
        for (auto v : spots[i]) at_node[v].push_back(static_cast<std::uint32_t>(i));
    bool claim1 = true;
    for (std::uint32_t v = 0; v < n; ++v) {
        const auto& here = at_node[v];
        for (std::size_t a = 0; a < here.size(); ++a)
            for (std::size_t b = a + 1; b < here.size(); ++b) {
                uf.unite(here[a], here[b]);
                if (Rational((masks[here[a]] & masks[here[b]]).count()) <
                    overlap_need)
                    claim1 = false;
            }
    }
    if (!claim1)
        throw InvariantViolation("intersecting dense spots share too few nodes");
    rep.claim_intersection = true;

    // Classes -> pseudo-cliques.
    std::vector<std::vector<std::uint32_t>> class_spots(spots.size());
    for (std::size_t i = 0; i < spots.size(); ++i)
        class_spots[uf.find(static_cast<std::uint32_t>(i))].push_back(
            static_cast<std::uint32_t>(i));
    std::vector<std::uint32_t> block_of(n, UINT32_MAX);
    for (const auto& members : class_spots) {
        if (members.empty()) continue;
        boost::dynamic_bitset<> uni(n);
        for (auto s : members) uni |= masks[s];
        std::vector<std::uint32_t> nodes;
        for (std::size_t v = uni.find_first();
             v != boost::dynamic_bitset<>::npos; v = uni.find_next(v))
            nodes.push_back(static_cast<std::uint32_t>(v));
        rep.blocks.push_back(std::move(nodes));
    }
    std::sort(rep.blocks.begin(), rep.blocks.end());
    for (std::size_t b = 0; b < rep.blocks.size(); ++b)
        for (auto v : rep.blocks[b]) {
            if (block_of[v] != UINT32_MAX)
                throw InvariantViolation("pseudo-cliques are not disjoint");
            block_of[v] = static_cast<std::uint32_t>(b);
        }
    rep.claim_disjoint = true;

    // Transitivity and the size bound hold in the delta < 1/16 regime.
    if (small_delta) {
        bool transitive = true;
        for (const auto& members : class_spots)
            for (std::size_t a = 0; a < members.size() && transitive; ++a)
                for (std::size_t b = a + 1; b < members.size(); ++b)
                    if (!masks[members[a]].intersects(masks[members[b]])) {
                        transitive = false;
                        break;
                    }
        rep.claim_transitivity = transitive;
        if (!transitive)
            rep.warnings.push_back("spots in one class do not all pairwise "
                                   "intersect (d too small for transitivity)");
        Rational size_cap = (Rational(1) - 8 * delta) / (Rational(1) - 13 * delta) *
                            (Rational(d) + 1);
        rep.size_bound_ok = true;
        for (const auto& blk : rep.blocks)
            if (Rational(blk.size()) > size_cap) rep.size_bound_ok = false;
        if (!rep.size_bound_ok)
            rep.warnings.push_back("a pseudo-clique exceeds the size bound "
                                   "(d too small for the guarantee)");
    }
    rep.claims_checked = true;

    rep.covered_triangles = covered_triangle_count(g, block_of);
    rep.coverage_fraction =
        rep.total_triangles
            ? Rational(rep.covered_triangles, rep.total_triangles)
            : Rational(0);
    return rep;
}

StructureReport structure_report(const RegularGraph& g, StructureMode mode,
                                 std::optional<Rational> delta) {
    if (mode == StructureMode::GrowingD) {
        if (!delta) throw Error("growing-d reports need delta");
        return assemble_pseudo_cliques(g, *delta);
    }
    StructureReport rep;
    rep.mode = StructureMode::FixedD;
    rep.delta = delta.value_or(Rational(0));
    rep.eps_n = eps_n_scale(g.node_count());
    rep.badness = classify_badness(g, rep.delta);
    rep.total_triangles = count_triangles(g);
    rep.blocks = find_d_plus_1_cliques(g);
    std::vector<std::uint32_t> block_of(g.node_count(), UINT32_MAX);
    for (std::size_t b = 0; b < rep.blocks.size(); ++b)
        for (auto v : rep.blocks[b]) block_of[v] = static_cast<std::uint32_t>(b);
    rep.covered_triangles = covered_triangle_count(g, block_of);
    rep.coverage_fraction =
        rep.total_triangles
            ? Rational(rep.covered_triangles, rep.total_triangles)
            : Rational(0);
    return rep;
}

} // namespace regtri
