#include "regtri/sampler.hpp"

#include <algorithm>
#include <cmath>

#include "regtri/census.hpp"
#include "regtri/generators.hpp"

namespace regtri {

std::vector<BetaStage> ChainConfig::default_schedule(std::uint32_t n,
                                                     std::uint32_t d) {
    // Geometric ramp: each stage doubles beta, ending at 2*ln(n).
    std::vector<BetaStage> stages;
    double beta_final = 2.0 * std::log(std::max<std::uint32_t>(n, 2));
    std::uint64_t per_stage = static_cast<std::uint64_t>(n) * d * 100;
    for (int k = 1; k <= 10; ++k)
        stages.push_back(BetaStage{beta_final / static_cast<double>(1 << (10 - k)),
                                   per_stage});
    return stages;
}

ChainConfig ChainConfig::defaults(std::uint32_t n, std::uint32_t d,
                                  const Rational& c, std::uint64_t seed) {
    ChainConfig cfg;
    cfg.n = n;
    cfg.d = d;
    cfg.c = c;
    cfg.seed = seed;
    cfg.schedule = default_schedule(n, d);
    cfg.restricted_steps = static_cast<std::uint64_t>(n) * d * 100;
    cfg.record_every = 1000;
    std::uint64_t scheduled = 0;
    for (const auto& s : cfg.schedule) scheduled += s.steps;
    cfg.max_steps = scheduled + static_cast<std::uint64_t>(n) * d * 1000;
    return cfg;
}

namespace {

void sorted_insert(std::vector<std::uint32_t>& v, std::uint32_t x) {
    v.insert(std::upper_bound(v.begin(), v.end(), x), x);
}

void sorted_erase(std::vector<std::uint32_t>& v, std::uint32_t x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x)
        throw InvariantViolation("adjacency list out of sync");
    v.erase(it);
}

} // namespace

SwapChain::SwapChain(const RegularGraph& start, std::uint64_t seed)
    : n_(start.node_count()),
      d_(start.degree()),
      edges_(start.edges()),
      rng_(seed, 0x73776170ULL) {
    adj_.reserve(n_);
    for (std::uint32_t v = 0; v < n_; ++v) adj_.push_back(start.neighbors(v));
    triangles_ = count_triangles(start);
}

std::int64_t SwapChain::common_neighbors(std::uint32_t a, std::uint32_t b) const {
    const auto& x = adj_[a];
    const auto& y = adj_[b];
    std::int64_t count = 0;
    auto ix = x.begin(), iy = y.begin();
    while (ix != x.end() && iy != y.end()) {
        if (*ix < *iy) ++ix;
        else if (*iy < *ix) ++iy;
        else { ++count; ++ix; ++iy; }
    }
    return count;
}

SwapChain::Proposal SwapChain::propose() {
    Proposal p;
    if (edges_.size() < 2) return p;  // no swap exists
    p.e1 = static_cast<std::size_t>(rng_.below(edges_.size()));
    do {
        p.e2 = static_cast<std::size_t>(rng_.below(edges_.size()));
    } while (p.e2 == p.e1);
    std::uint32_t a = edges_[p.e1].u, b = edges_[p.e1].v;
    std::uint32_t x = edges_[p.e2].u, y = edges_[p.e2].v;
    if (rng_.below(2)) std::swap(x, y);
    if (a == x || a == y || b == x || b == y) return p;  // invalid
    bool exists_ax = std::binary_search(adj_[a].begin(), adj_[a].end(), x);
    bool exists_by = std::binary_search(adj_[b].begin(), adj_[b].end(), y);
    if (exists_ax || exists_by) return p;  // invalid
    p.valid = true;
    p.new1 = make_edge(a, x);
    p.new2 = make_edge(b, y);
    // Triangle change, measured with both old edges absent: no triangle can
    // contain both old edges or both new ones (four distinct endpoints).
    std::int64_t removed = common_neighbors(a, b) + common_neighbors(x, y);
    sorted_erase(adj_[a], b);
    sorted_erase(adj_[b], a);
    sorted_erase(adj_[x], y);
    sorted_erase(adj_[y], x);
    std::int64_t added = common_neighbors(a, x) + common_neighbors(b, y);
    sorted_insert(adj_[a], b);
    sorted_insert(adj_[b], a);
    sorted_insert(adj_[x], y);
    sorted_insert(adj_[y], x);
    p.delta_t = added - removed;
    return p;
}

void SwapChain::apply(const Proposal& p) {
    std::uint32_t a = edges_[p.e1].u, b = edges_[p.e1].v;
    std::uint32_t x = edges_[p.e2].u, y = edges_[p.e2].v;
    sorted_erase(adj_[a], b);
    sorted_erase(adj_[b], a);
    sorted_erase(adj_[x], y);
    sorted_erase(adj_[y], x);
    sorted_insert(adj_[p.new1.u], p.new1.v);
    sorted_insert(adj_[p.new1.v], p.new1.u);
    sorted_insert(adj_[p.new2.u], p.new2.v);
    sorted_insert(adj_[p.new2.v], p.new2.u);
    edges_[p.e1] = p.new1;
    edges_[p.e2] = p.new2;
    triangles_ += p.delta_t;
}

bool SwapChain::metropolis_step(double beta) {
    Proposal p = propose();
    if (!p.valid) return false;
    double exponent = beta * static_cast<double>(p.delta_t);
    if (exponent < 0 && rng_.real01() >= std::exp(exponent)) return false;
    apply(p);
    return true;
}

bool SwapChain::restricted_step(std::int64_t t_min) {
    Proposal p = propose();
    if (!p.valid) return false;
    if (triangles_ + p.delta_t < t_min) return false;
    apply(p);
    return true;
}

RegularGraph SwapChain::snapshot() const {
    return RegularGraph::from_edges(n_, d_, edges_);
}

namespace {

struct TraceRecorder {
    ChainTrace* trace;
    std::uint64_t record_every;
    std::uint64_t window_accepts = 0;

    void tick(const SwapChain& chain, char phase, double beta, bool accepted) {
        ++trace->total_proposals;
        if (accepted) {
            ++trace->accepted;
            ++window_accepts;
        }
        if (record_every && trace->total_proposals % record_every == 0) {
            TraceRow row;
            row.step = trace->total_proposals;
            row.phase = phase;
            row.beta = beta;
            row.triangles = chain.triangles();
            row.accept_rate = static_cast<double>(window_accepts) /
                              static_cast<double>(record_every);
            trace->rows.push_back(row);
            window_accepts = 0;
        }
    }
};

} // namespace

SampleResult sample_conditioned(const ChainConfig& cfg) {
    if (cfg.c < 0 || cfg.c > 1) throw Error("c must lie in [0,1]");
    if (static_cast<std::uint64_t>(cfg.n) * cfg.d % 2 != 0)
        throw ParityViolation("d*n must be even");
    auto threshold =
        ceil_rational(cfg.c * t_max(cfg.n, cfg.d)).convert_to<std::int64_t>();

    RegularGraph start = random_regular_graph(cfg.n, cfg.d, cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    SwapChain chain(start, cfg.seed);

    SampleResult out{start, {}};
    out.trace.threshold = threshold;
    TraceRecorder rec{&out.trace, cfg.record_every};

    double beta_last = 0.0;
    for (const auto& stage : cfg.schedule) {
        beta_last = stage.beta;
        for (std::uint64_t s = 0; s < stage.steps; ++s)
            rec.tick(chain, 'a', stage.beta, chain.metropolis_step(stage.beta));
    }
    // Keep annealing at the final temperature until the conditioning set is
    // reached, within the proposal cap.
    while (chain.triangles() < threshold) {
        if (cfg.max_steps && out.trace.total_proposals >= cfg.max_steps)
            throw ChainTimeout("triangle threshold " + std::to_string(threshold) +
                               " not reached after " +
                               std::to_string(out.trace.total_proposals) +
                               " proposals");
        rec.tick(chain, 'a', beta_last, chain.metropolis_step(beta_last));
    }
    out.trace.reached_threshold = true;

    for (std::uint64_t s = 0; s < cfg.restricted_steps; ++s)
        rec.tick(chain, 'r', 0.0, chain.restricted_step(threshold));

    if (chain.triangles() < threshold)
        throw InvariantViolation("restricted phase left the conditioning set");
    out.graph = chain.snapshot();
    return out;
}

} // namespace regtri
