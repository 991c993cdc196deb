#include "regtri/acceptance.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <unistd.h>
#include <utility>
#include <vector>

#include "regtri/bounds.hpp"
#include "regtri/census.hpp"
#include "regtri/enumerate.hpp"
#include "regtri/generators.hpp"
#include "regtri/graph.hpp"
#include "regtri/report_json.hpp"
#include "regtri/reveal.hpp"
#include "regtri/sampler.hpp"
#include "regtri/structure.hpp"

namespace regtri {

namespace {

namespace fs = std::filesystem;

std::vector<std::vector<std::uint32_t>> connected_components(const RegularGraph& g) {
    std::uint32_t n = g.node_count();
    std::vector<char> seen(n, 0);
    std::vector<std::vector<std::uint32_t>> comps;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<std::uint32_t> comp{s};
        seen[s] = 1;
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (std::uint32_t w : g.neighbors(comp[i]))
                if (!seen[w]) {
                    seen[w] = 1;
                    comp.push_back(w);
                }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    std::sort(comps.begin(), comps.end());
    return comps;
}

// Induced subgraph on `keep`, relabeled to 0..|keep|-1; requires the result
// to be d-regular (true when no edge leaves `keep`).
RegularGraph induced_regular(const RegularGraph& g,
                             const std::vector<std::uint32_t>& keep) {
    std::vector<std::uint32_t> index(g.node_count(), UINT32_MAX);
    for (std::uint32_t i = 0; i < keep.size(); ++i) index[keep[i]] = i;
    std::vector<Edge> edges;
    for (const Edge& e : g.edges())
        if (index[e.u] != UINT32_MAX && index[e.v] != UINT32_MAX)
            edges.push_back(make_edge(index[e.u], index[e.v]));
    return RegularGraph::from_edges(static_cast<std::uint32_t>(keep.size()),
                                    g.degree(), std::move(edges));
}

std::string rstr(const Rational& q) { return rational_str(q); }

// ---- criterion 1: exact permutation mean == sum_e t_e/(t_e+2) ----

void criterion_mean_identity(CriterionResult& r, const AcceptanceOptions&) {
    std::uint64_t checked = 0, mismatched = 0;
    auto check = [&](const RegularGraph& g) {
        ++checked;
        if (mean_phi_over_permutations_exact(g).mean != expected_phi_exact(g))
            ++mismatched;
    };
    const std::pair<std::uint32_t, std::uint32_t> spaces[] = {{6, 2}, {4, 3}, {6, 3}};
    for (auto [n, d] : spaces)
        enumerate_regular_graphs(n, d,
                                 [&](const GraphView& v) { check(v.materialize()); });
    for (std::uint64_t i = 0; i < 20; ++i)
        check(sample_configuration_model(8, 3, 1000 + i));
    std::ostringstream detail;
    detail << checked << " graphs, " << mismatched << " mismatches";
    r.detail = detail.str();
    r.pass = mismatched == 0 && checked > 140;
}

// ---- criterion 2: success fraction >= 2/(d*n) on conditioned graphs ----

void criterion_orbit_bound(CriterionResult& r, const AcceptanceOptions&) {
    struct Space {
        std::uint32_t n, d;
        std::vector<Rational> cs;
    };
    const std::vector<Space> spaces = {
        {6, 2, {Rational(1)}},
        {8, 3, {Rational(1, 4), Rational(1, 2), Rational(1)}},
    };
    std::uint64_t checked = 0, violations = 0;
    for (const auto& space : spaces) {
        Rational cap = t_max(space.n, space.d);
        Rational floor_frac(2, static_cast<std::uint64_t>(space.d) * space.n);
        Int perms = factorial(space.n);
        std::vector<Int> need;
        std::vector<Rational> min_weight;
        for (const Rational& c : space.cs) {
            need.push_back(ceil_rational(c * cap));
            min_weight.push_back(t_c_value(space.n, space.d, c) - 1);
        }
        Int need_any = *std::min_element(need.begin(), need.end());
        enumerate_regular_graphs(space.n, space.d, [&](const GraphView& view) {
            if (Int(view.triangles) < need_any) return;
            RegularGraph g = view.materialize();
            auto counts = phi_weight_counts_over_permutations(g);
            for (std::size_t i = 0; i < need.size(); ++i) {
                if (Int(view.triangles) < need[i]) continue;
                ++checked;
                Int good = 0;
                for (const auto& [w, cnt] : counts)
                    if (Rational(w) >= min_weight[i]) good += cnt;
                if (Rational(good) / Rational(perms) < floor_frac) ++violations;
            }
        });
    }
    std::ostringstream detail;
    detail << checked << " (graph,c) pairs, " << violations << " below 2/(dn)";
    r.detail = detail.str();
    r.pass = violations == 0 && checked > 0;
}

// ---- criterion 3: encode_phi weight == phi_weight_fast ----

void criterion_profile_equivalence(CriterionResult& r, const AcceptanceOptions&) {
    Rng rng(0xC3, 0);
    std::uint64_t checked = 0, mismatched = 0;
    const std::uint32_t degrees[] = {2, 3, 4};
    while (checked < 1000) {
        std::uint32_t d = degrees[checked % 3];
        std::uint32_t lo = d + 1;
        std::uint32_t n = lo + static_cast<std::uint32_t>(rng.below(30 - lo + 1));
        if (d % 2 == 1 && n % 2 == 1) n = n == 30 ? n - 1 : n + 1;
        RegularGraph g = random_regular_graph(n, d, rng.next());
        std::vector<std::vector<std::uint32_t>> ports;
        ports.reserve(n);
        for (std::uint32_t v = 0; v < n; ++v) {
            std::vector<std::uint32_t> p = g.neighbors(v);
            rng.shuffle(p);
            ports.push_back(std::move(p));
        }
        PortLabeledGraph pl = PortLabeledGraph::attach(g, std::move(ports));
        if (static_cast<std::int64_t>(encode_phi(pl).weight()) != phi_weight_fast(g))
            ++mismatched;
        ++checked;
    }
    std::ostringstream detail;
    detail << checked << " labeled graphs, " << mismatched << " weight mismatches";
    r.detail = detail.str();
    r.pass = mismatched == 0;
}

// ---- criterion 4: preimage sizes vs (dn)^(dn/2) (d^2/n)^w ----

void criterion_preimage_bound(CriterionResult& r, const AcceptanceOptions& opt) {
    const std::pair<std::uint32_t, std::uint32_t> spaces[] = {
        {4, 3}, {6, 2}, {5, 2}, {6, 3}};
    std::uint64_t profiles = 0, violations = 0;
    for (auto [n, d] : spaces) {
        auto hist = phi_preimage_histogram(n, d, EnumerationBudget{}, opt.jobs);
        std::map<std::uint32_t, Rational> bound_by_weight;
        for (const auto& [bits, count] : hist) {
            std::uint32_t w = static_cast<std::uint32_t>(std::popcount(bits));
            auto it = bound_by_weight.find(w);
            if (it == bound_by_weight.end())
                it = bound_by_weight.emplace(w, phi_preimage_bound_exact(n, d, w))
                         .first;
            ++profiles;
            if (Rational(count) > it->second) ++violations;
        }
    }
    std::ostringstream detail;
    detail << profiles << " profiles, " << violations << " above the bound";
    r.detail = detail.str();
    r.pass = violations == 0 && profiles > 0;
}

// ---- criterion 5: certified lower <= exact <= explicit upper ----

void criterion_counting_sandwich(CriterionResult& r, const AcceptanceOptions&) {
    const Rational cs[] = {Rational(0), Rational(1, 4), Rational(1, 2),
                           Rational(3, 4), Rational(1)};
    std::map<std::pair<std::uint32_t, std::uint32_t>, Int> residual_cache;
    auto residual_count = [&](std::uint32_t m, std::uint32_t d) -> Int {
        auto key = std::make_pair(m, d);
        auto it = residual_cache.find(key);
        if (it == residual_cache.end())
            it = residual_cache
                     .emplace(key, m == 0 ? Int(1)
                                          : Int(exact_clique_component_free_count(m, d)))
                     .first;
        return it->second;
    };
    std::uint64_t rows = 0, lower_rows = 0, violations = 0;
    for (std::uint32_t d = 1; d <= 4; ++d) {
        for (std::uint32_t n = std::max(d + 1, d * d); n * d <= 18; ++n) {
            if (n * d % 2) continue;
            std::map<std::int64_t, std::uint64_t> by_t;
            enumerate_regular_graphs(
                n, d, [&](const GraphView& v) { ++by_t[v.triangles]; });
            Rational cap = t_max(n, d);
            for (const Rational& c : cs) {
                ++rows;
                Int need = ceil_rational(c * cap);
                Int exact = 0;
                for (const auto& [t, cnt] : by_t)
                    if (Int(t) >= need) exact += cnt;
                if (Rational(exact) > explicit_upper_count_exact(n, d, c)) {
                    ++violations;
                    continue;
                }
                Int lower = 0;
                try {
                    PlantedSpec spec = PlantedSpec::clique_family(n, d, c);
                    lower = planted_partition_count(n, d, spec.b) *
                            residual_count(spec.m, d);
                } catch (const Error&) {
                    continue;  // no feasible planted family at this (n,d,c)
                }
                if (lower == 0) continue;
                ++lower_rows;
                if (lower > exact) ++violations;
            }
        }
    }
    std::ostringstream detail;
    detail << rows << " (n,d,c) rows (" << lower_rows
           << " with a certified planted lower bound), " << violations
           << " sandwich violations";
    r.detail = detail.str();
    r.pass = violations == 0 && rows > 0 && lower_rows > 0;
}

// ---- criterion 6: planted family triangle and k-clique guarantees ----

void criterion_planted_guarantees(CriterionResult& r, const AcceptanceOptions&) {
    const std::uint32_t ds[] = {3, 4, 5, 20};
    const Rational c(1, 2);
    std::uint64_t checks = 0, violations = 0;
    std::ostringstream detail;
    for (std::uint32_t d : ds) {
        std::uint32_t n = 10 * (d + 1);
        PlantedSpec spec = PlantedSpec::clique_family(n, d, c);
        std::uint64_t seed = 0xC600 + d;
        RegularGraph g = plant_clique_family(spec, seed);
        ++checks;
        if (Rational(count_triangles(g)) < ceil_rational(c * t_max(n, d))) {
            ++violations;
            detail << " d=" << d << ":T-short";
        }
        auto blocks = find_d_plus_1_cliques(g);
        if (blocks.size() != spec.b) {
            ++violations;
            detail << " d=" << d << ":blocks=" << blocks.size();
            continue;
        }
        std::vector<char> in_block(n, 0);
        for (const auto& blk : blocks)
            for (std::uint32_t v : blk) in_block[v] = 1;
        std::vector<std::uint32_t> rest;
        for (std::uint32_t v = 0; v < n; ++v)
            if (!in_block[v]) rest.push_back(v);
        RegularGraph res = induced_regular(g, rest);
        for (std::uint32_t k = 3; k <= 5; ++k) {
            ++checks;
            Int planted = Int(spec.b) * binomial(d + 1, k);
            bool split_ok = Int(count_k_cliques(g, k)) ==
                            planted + Int(count_k_cliques(res, k));
            bool algebra_ok = Rational(planted) >= c * t_k_max(n, d, k);
            if (!split_ok || !algebra_ok) {
                ++violations;
                detail << " d=" << d << ",k=" << k << (split_ok ? ":algebra" : ":split");
            }
        }
    }
    std::ostringstream head;
    head << checks << " checks, " << violations << " violations" << detail.str();
    r.detail = head.str();
    r.pass = violations == 0;
}

// ---- criterion 7: block recovery from planted instances ----

bool blocks_equal(const std::vector<std::vector<std::uint32_t>>& got,
                  std::vector<std::vector<std::uint32_t>> want) {
    std::vector<std::vector<std::uint32_t>> g = got;
    for (auto& b : g) std::sort(b.begin(), b.end());
    std::sort(g.begin(), g.end());
    for (auto& b : want) std::sort(b.begin(), b.end());
    std::sort(want.begin(), want.end());
    return g == want;
}

void criterion_structure_recovery(CriterionResult& r, const AcceptanceOptions&) {
    std::ostringstream detail;
    bool ok = true;

    auto planted_blocks = [](const RegularGraph& g, std::uint32_t size) {
        std::vector<std::vector<std::uint32_t>> blocks;
        for (auto& comp : connected_components(g))
            if (comp.size() == size) blocks.push_back(comp);
        return blocks;
    };

    // Growing-d pseudo-clique recovery at delta = 1/20 on both block kinds.
    const Rational delta(1, 20);
    struct Plant {
        const char* tag;
        BlockKind kind;
        std::uint64_t seed;
    };
    const Plant plants[] = {
        {"clique", BlockKind::Clique, 0xC701},
        {"matched", BlockKind::MatchedComplement, 0xC702},
    };
    for (const Plant& p : plants) {
        PlantedSpec spec = PlantedSpec::with_blocks(210, 20, Rational(1, 2), 5, p.kind);
        spec.validate();
        RegularGraph g = p.kind == BlockKind::Clique
                             ? plant_clique_family(spec, p.seed)
                             : plant_matched_complement_family(spec, p.seed);
        auto want = planted_blocks(g, spec.block_size());
        StructureReport rep = assemble_pseudo_cliques(g, delta);
        bool claims = rep.claims_checked && rep.claim_intersection &&
                      rep.claim_transitivity && rep.claim_disjoint &&
                      rep.size_bound_ok && rep.warnings.empty();
        bool recovered = want.size() == 5 && rep.blocks.size() == 5 &&
                         blocks_equal(rep.blocks, want);
        if (!recovered || !claims) ok = false;
        detail << p.tag << ": blocks=" << rep.blocks.size() << "/5 claims="
               << (claims ? "ok" : "FAIL") << " seed=" << p.seed << "; ";
    }

    // Fixed-d clique recovery: 3 planted (d+1)-cliques at (20,3).
    {
        PlantedSpec spec = PlantedSpec::clique_family(20, 3, Rational(1, 2));
        std::uint64_t seed = 0xC703;
        RegularGraph g = plant_clique_family(spec, seed);
        auto want = planted_blocks(g, 4);
        StructureReport rep = structure_report(g, StructureMode::FixedD);
        bool recovered = spec.b == 3 && want.size() == 3 && rep.blocks.size() == 3 &&
                         blocks_equal(rep.blocks, want);
        if (!recovered) ok = false;
        detail << "fixed: blocks=" << rep.blocks.size() << "/3 seed=" << seed;
    }

    r.detail = detail.str();
    r.pass = ok;
}

// ---- criterion 8: sampler calibration and conditioned sampling ----

void criterion_sampler(CriterionResult& r, const AcceptanceOptions&) {
    std::ostringstream detail;

    // Uniform stationary check at (6,2): P(T=2) = 10/70.
    SwapChain chain(circulant_graph(6, 2), 0xC8A);
    const std::uint64_t burn = 20000, samples = 120000, thin = 50;
    for (std::uint64_t i = 0; i < burn; ++i) chain.metropolis_step(0.0);
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (std::uint64_t i = 0; i < thin; ++i) chain.metropolis_step(0.0);
        if (chain.triangles() == 2) ++hits;
    }
    double p0 = 1.0 / 7.0;
    double se = std::sqrt(p0 * (1.0 - p0) / static_cast<double>(samples));
    double p_hat = static_cast<double>(hits) / static_cast<double>(samples);
    bool calibrated = std::fabs(p_hat - p0) <= 3.0 * se;
    detail << "P(T=2)=" << p_hat << " vs 1/7 (3se=" << 3.0 * se << "); ";

    // Conditioned run at (60,3,c=1/2), then the structure report.
    bool conditioned = false;
    try {
        ChainConfig cfg = ChainConfig::defaults(60, 3, Rational(1, 2), 0xC8B);
        SampleResult res = sample_conditioned(cfg);
        std::int64_t t = count_triangles(res.graph);
        conditioned = res.trace.reached_threshold && t >= res.trace.threshold;
        StructureReport rep = structure_report(res.graph, StructureMode::FixedD);
        detail << "T=" << t << "/" << res.trace.threshold
               << " bad_node_fraction=" << rstr(rep.badness.bad_node_fixed_fraction)
               << " eps_n=" << rep.eps_n << " (observation)";
    } catch (const ChainTimeout& e) {
        detail << "chain timeout: " << e.what();
    }

    r.detail = detail.str();
    r.pass = calibrated && conditioned;
}

// ---- criterion 9: saturated nodes lie in (d+1)-cliques ----

void criterion_saturated_nodes(CriterionResult& r, const AcceptanceOptions&) {
    const std::pair<std::uint32_t, std::uint32_t> spaces[] = {{6, 3}, {8, 3}};
    std::uint64_t saturated = 0, violations = 0;
    for (auto [n, d] : spaces) {
        enumerate_regular_graphs(n, d, [&](const GraphView& view) {
            RegularGraph g = view.materialize();
            EdgeTriangleTable table = edge_triangle_table(g);
            std::vector<char> all_max(n, 1);
            for (std::size_t i = 0; i < table.edges.size(); ++i)
                if (table.t[i] != d - 1) {
                    all_max[table.edges[i].u] = 0;
                    all_max[table.edges[i].v] = 0;
                }
            for (std::uint32_t v = 0; v < n; ++v) {
                if (!all_max[v]) continue;
                ++saturated;
                if (!node_in_kplus1_clique(g, v)) ++violations;
            }
        });
    }
    std::ostringstream detail;
    detail << saturated << " saturated nodes, " << violations
           << " outside any (d+1)-clique";
    r.detail = detail.str();
    r.pass = violations == 0 && saturated > 0;
}

// ---- criterion 10: byte-identical artifacts on repeated runs ----

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
    if (!out) throw Error("cannot write " + p.string());
}

std::string read_text(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (!in) throw Error("cannot read " + p.string());
    return buf.str();
}

void emit_bundle(const fs::path& dir) {
    fs::create_directories(dir);
    PlantedSpec spec = PlantedSpec::clique_family(20, 3, Rational(1, 2));
    RegularGraph g = plant_clique_family(spec, 7);
    write_text(dir / "census.json", dump_artifact(census_json(g, 5)));
    write_text(dir / "profile.json",
               dump_artifact(profile_json(encode_phi(PortLabeledGraph::with_sorted_ports(g)))));
    BoundSheet sheet = make_bound_sheet(20, 3, Rational(1, 2),
                                        ResidualTerm::gdn_heuristic(8, 3));
    write_text(dir / "bounds.json", dump_artifact(bound_sheet_json(sheet)));
    write_text(dir / "bounds.csv",
               bound_sheet_csv_header() + "\n" + bound_sheet_csv_row(sheet) + "\n");
    write_text(dir / "structure.json",
               dump_artifact(structure_json(structure_report(g, StructureMode::FixedD))));
    write_text(dir / "planted.json", dump_artifact(planted_spec_json(spec)));
    write_text(dir / "enumeration.json",
               dump_artifact(enumeration_json(enumerate_full(6, 2))));
    ChainConfig cfg = ChainConfig::defaults(12, 3, Rational(1, 4), 3);
    SampleResult res = sample_conditioned(cfg);
    write_text(dir / "trace.json", dump_artifact(trace_json(res.trace)));
    write_text(dir / "trace.csv", trace_csv(res.trace));
}

void criterion_determinism(CriterionResult& r, const AcceptanceOptions& opt) {
    fs::path base;
    bool scratch = opt.work_dir.empty();
    if (scratch)
        base = fs::temp_directory_path() /
               ("regtri_accept_" + std::to_string(::getpid()));
    else
        base = fs::path(opt.work_dir);
    emit_bundle(base / "run1");
    emit_bundle(base / "run2");
    const char* names[] = {"census.json", "profile.json",  "bounds.json",
                           "bounds.csv",  "structure.json", "planted.json",
                           "enumeration.json", "trace.json", "trace.csv"};
    std::uint64_t mismatched = 0;
    std::ostringstream detail;
    for (const char* name : names) {
        std::string a = read_text(base / "run1" / name);
        std::string b = read_text(base / "run2" / name);
        if (fnv1a64(a) != fnv1a64(b) || a != b) {
            ++mismatched;
            detail << " " << name;
        }
    }
    if (scratch) fs::remove_all(base);
    std::ostringstream head;
    head << sizeof(names) / sizeof(names[0]) << " artifacts, " << mismatched
         << " checksum mismatches" << detail.str();
    r.detail = head.str();
    r.pass = mismatched == 0;
}

} // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            std::ostream& out) {
    using Body = void (*)(CriterionResult&, const AcceptanceOptions&);
    struct Entry {
        int id;
        const char* name;
        Body body;
    };
    const Entry entries[] = {
        {1, "permutation-mean-identity", criterion_mean_identity},
        {2, "orbit-success-bound", criterion_orbit_bound},
        {3, "profile-weight-equivalence", criterion_profile_equivalence},
        {4, "preimage-size-bound", criterion_preimage_bound},
        {5, "counting-sandwich", criterion_counting_sandwich},
        {6, "planted-family-guarantees", criterion_planted_guarantees},
        {7, "structure-recovery", criterion_structure_recovery},
        {8, "sampler-calibration", criterion_sampler},
        {9, "saturated-node-cliques", criterion_saturated_nodes},
        {10, "artifact-determinism", criterion_determinism},
    };
    std::vector<CriterionResult> results;
    for (const Entry& e : entries) {
        CriterionResult r;
        r.id = e.id;
        r.name = e.name;
        auto t0 = std::chrono::steady_clock::now();
        try {
            e.body(r, opt);
        } catch (const std::exception& ex) {
            r.pass = false;
            r.detail = std::string("exception: ") + ex.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                        .count();
        char line[64];
        std::snprintf(line, sizeof(line), "  (%.1fs)  ", r.seconds);
        out << (r.pass ? "[PASS]" : "[FAIL]") << " C" << r.id << " " << r.name
            << line << r.detail << std::endl;
        results.push_back(std::move(r));
    }
    return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return !results.empty();
}

} // namespace regtri
