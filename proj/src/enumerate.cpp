#include "regtri/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <thread>

#include "regtri/census.hpp"

namespace regtri {

double regular_graph_count_estimate(std::uint32_t n, std::uint32_t d) {
    if (static_cast<std::uint64_t>(n) * d % 2 != 0) return 0.0;
    if (n == 0) return 1.0;
    std::uint64_t H = static_cast<std::uint64_t>(n) * d;
    BigFloat est = to_bigfloat(factorial(H)) /
                   (to_bigfloat(factorial(H / 2)) * to_bigfloat(pow_int(2, H / 2)) *
                    to_bigfloat(pow_int(factorial(d), n)));
    est *= exp(BigFloat(1.0 - static_cast<double>(d) * d) / 4);
    return est.convert_to<double>();
}

PortLabeledGraph PairingView::to_port_labeled() const {
    if (!simple) throw Error("pairing is not simple");
    auto g = RegularGraph::from_edges(n, d, *edges);
    std::vector<std::vector<std::uint32_t>> ports(n, std::vector<std::uint32_t>(d));
    for (std::uint32_t h = 0; h < n * d; ++h)
        ports[h / d][h % d] = (*partner)[h] / d;
    return PortLabeledGraph::attach(std::move(g), std::move(ports));
}

namespace {

struct PairingSweeper {
    std::uint32_t n = 0, d = 0, H = 0;
    bool simple_only = false;
    const std::function<void(const PairingView&)>* visit = nullptr;

    std::vector<Edge> edges;
    std::vector<std::uint8_t> phi_bits;
    std::vector<std::uint32_t> partner;
    std::vector<std::uint64_t> adj;
    std::vector<std::uint8_t> multi;  // packed u*n+v, u <= v
    std::uint32_t violations = 0;
    std::uint64_t leaves = 0, simple_count = 0;

    void init(std::uint32_t n_, std::uint32_t d_, bool simple_only_,
              const std::function<void(const PairingView&)>* visit_) {
        n = n_;
        d = d_;
        H = n * d;
        simple_only = simple_only_;
        visit = visit_;
        edges.reserve(H / 2);
        phi_bits.reserve(H / 2);
        partner.assign(H, 0);
        adj.assign(n, 0);
        multi.assign(static_cast<std::size_t>(n) * n, 0);
    }

    void leaf() {
        ++leaves;
        bool simple = violations == 0;
        if (simple) ++simple_count;
        if (visit && *visit) {
            PairingView view;
            view.n = n;
            view.d = d;
            view.edges = &edges;
            view.phi_bits = &phi_bits;
            view.partner = &partner;
            view.simple = simple;
            (*visit)(view);
        }
    }

    void rec(std::uint64_t free) {
        if (free == 0) {
            leaf();
            return;
        }
        auto a = static_cast<std::uint32_t>(std::countr_zero(free));
        std::uint64_t rest = free & (free - 1);
        for (std::uint64_t m = rest; m;) {
            auto b = static_cast<std::uint32_t>(std::countr_zero(m));
            m &= m - 1;
            step(a, b, rest & ~(1ULL << b));
        }
    }

    // Pair half-edges a < b, recurse over the given free set, undo.
    void step(std::uint32_t a, std::uint32_t b, std::uint64_t next_free) {
        std::uint32_t u = a / d, v = b / d;
        bool loop = u == v;
        std::uint32_t x = std::min(u, v), y = std::max(u, v);
        std::size_t key = static_cast<std::size_t>(x) * n + y;
        bool dup = !loop && multi[key] > 0;
        if (simple_only && (loop || dup)) return;
        std::uint8_t bit = (!loop && (adj[u] & adj[v]) != 0) ? 1 : 0;
        edges.push_back(Edge{x, y});
        phi_bits.push_back(bit);
        partner[a] = b;
        partner[b] = a;
        if (loop || dup) ++violations;
        if (!loop && multi[key]++ == 0) {
            adj[u] |= 1ULL << v;
            adj[v] |= 1ULL << u;
        }
        rec(next_free);
        if (!loop && --multi[key] == 0) {
            adj[u] &= ~(1ULL << v);
            adj[v] &= ~(1ULL << u);
        }
        if (loop || dup) --violations;
        phi_bits.pop_back();
        edges.pop_back();
    }
};

void check_pairing_budget(std::uint32_t n, std::uint32_t d,
                          const EnumerationBudget& budget) {
    if (static_cast<std::uint64_t>(n) * d % 2 != 0)
        throw ParityViolation("d*n must be even");
    std::uint64_t H = static_cast<std::uint64_t>(n) * d;
    if (H > 64) throw BudgetExceeded("pairing sweep needs d*n <= 64");
    Int total = double_factorial_odd(static_cast<std::int64_t>(H) - 1);
    if (total > budget.max_pairings)
        throw BudgetExceeded("pairing sweep would visit " + total.str() +
                             " pairings, budget " +
                             std::to_string(budget.max_pairings));
}

} // namespace

PairingSweepCounts sweep_pairings(
    std::uint32_t n, std::uint32_t d, bool simple_only,
    const std::function<void(const PairingView&)>& visit,
    const EnumerationBudget& budget, unsigned jobs) {
    check_pairing_budget(n, d, budget);
    const std::uint32_t H = n * d;
    PairingSweepCounts counts;
    if (H == 0) {
        PairingSweeper s;
        s.init(n, d, simple_only, &visit);
        s.rec(0);
        counts.total_pairings = s.leaves;
        counts.simple = s.simple_count;
        return counts;
    }
    std::uint64_t all = H == 64 ? ~0ULL : (1ULL << H) - 1;
    if (jobs <= 1) {
        PairingSweeper s;
        s.init(n, d, simple_only, &visit);
        s.rec(all);
        counts.total_pairings = s.leaves;
        counts.simple = s.simple_count;
        return counts;
    }
    // Shard on the partner of half-edge 0; workers pull shards round-robin.
    std::vector<std::uint64_t> shard_leaves(H, 0), shard_simple(H, 0);
    std::atomic<std::uint32_t> next_shard{1};
    auto worker = [&]() {
        PairingSweeper s;
        s.init(n, d, simple_only, &visit);
        for (;;) {
            std::uint32_t b = next_shard.fetch_add(1);
            if (b >= H) break;
            s.leaves = 0;
            s.simple_count = 0;
            s.step(0, b, all & ~1ULL & ~(1ULL << b));
            shard_leaves[b] = s.leaves;
            shard_simple[b] = s.simple_count;
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    std::uint64_t leaves = 0, simple = 0;
    for (std::uint32_t b = 1; b < H; ++b) {
        leaves += shard_leaves[b];
        simple += shard_simple[b];
    }
    counts.total_pairings = leaves;
    counts.simple = simple;
    return counts;
}

RegularGraph GraphView::materialize() const {
    std::vector<Edge> edges;
    for (std::uint32_t u = 0; u < n; ++u) {
        std::uint64_t m = u + 1 >= 64 ? 0 : (*adj_mask)[u] & (~0ULL << (u + 1));
        while (m) {
            auto v = static_cast<std::uint32_t>(std::countr_zero(m));
            m &= m - 1;
            edges.push_back(Edge{u, v});
        }
    }
    return RegularGraph::from_edges(n, d, std::move(edges));
}

namespace {

struct GraphEnumerator {
    std::uint32_t n = 0, d = 0;
    const std::function<void(const GraphView&)>* visit = nullptr;

    std::vector<std::uint64_t> adj;
    std::vector<std::uint32_t> deg;
    std::int64_t triangles = 0;
    std::uint64_t count = 0;

    void run() {
        adj.assign(n, 0);
        deg.assign(n, 0);
        complete_next(0);
    }

    void complete_next(std::uint32_t from) {
        std::uint32_t u = from;
        while (u < n && deg[u] == d) ++u;
        if (u == n) {
            ++count;
            if (visit && *visit) {
                GraphView view;
                view.n = n;
                view.d = d;
                view.adj_mask = &adj;
                view.triangles = triangles;
                (*visit)(view);
            }
            return;
        }
        std::vector<std::uint32_t> cand;
        cand.reserve(n - u);
        for (std::uint32_t w = u + 1; w < n; ++w)
            if (deg[w] < d) cand.push_back(w);
        choose(u, d - deg[u], 0, cand);
    }

    // Pick `still` more neighbors for u from cand[idx..].
    void choose(std::uint32_t u, std::uint32_t still, std::size_t idx,
                const std::vector<std::uint32_t>& cand) {
        if (still == 0) {
            complete_next(u + 1);
            return;
        }
        if (cand.size() - idx < still) return;
        for (std::size_t i = idx; i + still <= cand.size(); ++i) {
            std::uint32_t w = cand[i];
            auto dt = static_cast<std::int64_t>(std::popcount(adj[u] & adj[w]));
            triangles += dt;
            adj[u] |= 1ULL << w;
            adj[w] |= 1ULL << u;
            ++deg[u];
            ++deg[w];
            choose(u, still - 1, i + 1, cand);
            --deg[u];
            --deg[w];
            adj[u] &= ~(1ULL << w);
            adj[w] &= ~(1ULL << u);
            triangles -= dt;
        }
    }
};

void check_graph_budget(std::uint32_t n, std::uint32_t d,
                        const EnumerationBudget& budget) {
    if (static_cast<std::uint64_t>(n) * d % 2 != 0)
        throw ParityViolation("d*n must be even");
    if (n > 64) throw BudgetExceeded("graph enumeration needs n <= 64");
    if (d >= n && n > 0) throw DegreeViolation("need d < n");
    double est = regular_graph_count_estimate(n, d);
    if (!(est <= budget.max_graph_estimate))
        throw BudgetExceeded("estimated " + std::to_string(est) +
                             " graphs at (n=" + std::to_string(n) + ", d=" +
                             std::to_string(d) + "), budget " +
                             std::to_string(budget.max_graph_estimate));
}

std::uint64_t mask_k_cliques(const std::vector<std::uint64_t>& adj,
                             std::uint32_t k, std::uint32_t size,
                             std::uint64_t cand) {
    if (size == k) return 1;
    std::uint64_t total = 0;
    while (cand) {
        auto v = static_cast<std::uint32_t>(std::countr_zero(cand));
        cand &= cand - 1;
        total += mask_k_cliques(adj, k, size + 1, cand & adj[v]);
    }
    return total;
}

// A K_{d+1} inside a d-regular graph is automatically a whole component;
// one exists iff some closed neighborhood is a clique.
bool has_clique_component(const std::vector<std::uint64_t>& adj, std::uint32_t n) {
    for (std::uint32_t v = 0; v < n; ++v) {
        std::uint64_t closed = adj[v] | (1ULL << v);
        bool ok = true;
        for (std::uint64_t m = adj[v]; m && ok;) {
            auto w = static_cast<std::uint32_t>(std::countr_zero(m));
            m &= m - 1;
            if (closed & ~(adj[w] | (1ULL << w))) ok = false;
        }
        if (ok && adj[v]) return true;
    }
    return false;
}

} // namespace

std::uint64_t enumerate_regular_graphs(
    std::uint32_t n, std::uint32_t d,
    const std::function<void(const GraphView&)>& visit,
    const EnumerationBudget& budget) {
    check_graph_budget(n, d, budget);
    GraphEnumerator e;
    e.n = n;
    e.d = d;
    e.visit = &visit;
    e.run();
    return e.count;
}

EnumerationResult enumerate_full(std::uint32_t n, std::uint32_t d,
                                 const EnumerationBudget& budget, unsigned jobs) {
    if (static_cast<std::uint64_t>(n) * d / 2 > 32)
        throw BudgetExceeded("profile keys need d*n/2 <= 32");
    EnumerationResult r;
    r.n = n;
    r.d = d;
    std::mutex mu;
    std::function<void(const PairingView&)> pairing_visit =
        [&](const PairingView& view) {
            if (!view.simple) return;
            std::uint32_t key = 0;
            for (std::size_t k = 0; k < view.phi_bits->size(); ++k)
                if ((*view.phi_bits)[k]) key |= 1u << k;
            std::lock_guard<std::mutex> lock(mu);
            ++r.phi_histogram[key];
        };
    auto counts = sweep_pairings(n, d, false, pairing_visit, budget, jobs);
    r.total_pairings = counts.total_pairings;
    r.simple_pairings = counts.simple;

    std::function<void(const GraphView&)> graph_visit =
        [&](const GraphView& view) { ++r.count_by_triangles[view.triangles]; };
    r.graph_count = enumerate_regular_graphs(n, d, graph_visit, budget);

    r.pairing_graph_identity =
        Int(r.simple_pairings) == Int(r.graph_count) * pow_int(factorial(d), n);
    return r;
}

std::map<std::uint32_t, std::uint64_t> phi_preimage_histogram(
    std::uint32_t n, std::uint32_t d, const EnumerationBudget& budget,
    unsigned jobs) {
    if (static_cast<std::uint64_t>(n) * d / 2 > 32)
        throw BudgetExceeded("profile keys need d*n/2 <= 32");
    std::map<std::uint32_t, std::uint64_t> hist;
    std::mutex mu;
    std::function<void(const PairingView&)> visit = [&](const PairingView& view) {
        if (!view.simple) return;
        std::uint32_t key = 0;
        for (std::size_t k = 0; k < view.phi_bits->size(); ++k)
            if ((*view.phi_bits)[k]) key |= 1u << k;
        std::lock_guard<std::mutex> lock(mu);
        ++hist[key];
    };
    sweep_pairings(n, d, true, visit, budget, jobs);
    return hist;
}

std::uint64_t exact_conditioned_count(std::uint32_t n, std::uint32_t d,
                                      const Rational& c,
                                      const EnumerationBudget& budget) {
    auto threshold = ceil_rational(c * t_max(n, d)).convert_to<std::int64_t>();
    std::uint64_t good = 0;
    std::function<void(const GraphView&)> visit = [&](const GraphView& view) {
        if (view.triangles >= threshold) ++good;
    };
    enumerate_regular_graphs(n, d, visit, budget);
    return good;
}

std::uint64_t exact_k_clique_conditioned_count(std::uint32_t n, std::uint32_t d,
                                               const Rational& c, std::uint32_t k,
                                               const EnumerationBudget& budget) {
    if (k < 3) throw BadK("k must be >= 3");
    auto threshold = ceil_rational(c * t_k_max(n, d, k)).convert_to<std::int64_t>();
    std::uint64_t good = 0;
    std::function<void(const GraphView&)> visit = [&](const GraphView& view) {
        std::int64_t cliques;
        if (k == 3) {
            cliques = view.triangles;
        } else {
            std::uint64_t total = 0;
            for (std::uint32_t v = 0; v < n; ++v) {
                std::uint64_t above = v + 1 >= 64 ? 0 : ~0ULL << (v + 1);
                total += mask_k_cliques(*view.adj_mask, k, 1,
                                        (*view.adj_mask)[v] & above);
            }
            cliques = static_cast<std::int64_t>(total);
        }
        if (cliques >= threshold) ++good;
    };
    enumerate_regular_graphs(n, d, visit, budget);
    return good;
}

std::uint64_t exact_clique_component_free_count(std::uint32_t n, std::uint32_t d,
                                                const EnumerationBudget& budget) {
    std::uint64_t good = 0;
    std::function<void(const GraphView&)> visit = [&](const GraphView& view) {
        if (!has_clique_component(*view.adj_mask, n)) ++good;
    };
    enumerate_regular_graphs(n, d, visit, budget);
    return good;
}

} // namespace regtri
