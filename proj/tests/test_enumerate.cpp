#include <doctest.h>

#include <atomic>
#include <map>

#include "oracles.hpp"
#include "regtri/census.hpp"
#include "regtri/enumerate.hpp"
#include "regtri/generators.hpp"
#include "regtri/graph.hpp"
#include "regtri/reveal.hpp"

using namespace regtri;

TEST_CASE("graph count estimate is in the right ballpark") {
    double est = regular_graph_count_estimate(6, 2);
    CHECK(est > 50.0);
    CHECK(est < 100.0);  // true count is 70
    CHECK(regular_graph_count_estimate(12, 3) >
          regular_graph_count_estimate(10, 3));
}

TEST_CASE("full pairing sweeps count (dn-1)!! leaves") {
    auto counts = sweep_pairings(4, 3, false, {});
    CHECK(counts.total_pairings == double_factorial_odd(11));  // 10395
    CHECK(counts.simple == 1296);
    counts = sweep_pairings(6, 2, false, {});
    CHECK(counts.total_pairings == 10395);
    CHECK(counts.simple == 4480);
    counts = sweep_pairings(5, 2, false, {});
    CHECK(counts.total_pairings == double_factorial_odd(9));  // 945
    CHECK(counts.simple == 12 * 2 * 2 * 2 * 2 * 2);  // 12 graphs * (2!)^5
}

TEST_CASE("simple-only sweeps visit exactly the simple pairings") {
    std::uint64_t visited = 0;
    auto counts =
        sweep_pairings(6, 2, true, [&](const PairingView& v) {
            ++visited;
            CHECK(v.simple);
        });
    CHECK(visited == 4480);
    CHECK(counts.simple == 4480);
}

TEST_CASE("sharded sweeps agree with serial ones") {
    std::map<std::uint32_t, std::uint64_t> serial;
    auto a = sweep_pairings(
        6, 2, true,
        [&](const PairingView& v) {
            std::uint32_t key = 0;
            for (std::size_t k = 0; k < v.phi_bits->size(); ++k)
                if ((*v.phi_bits)[k]) key |= 1u << k;
            ++serial[key];
        },
        EnumerationBudget{}, 1);
    // visitor calls under jobs=2 come from worker threads, so count atomically
    std::atomic<std::uint64_t> visited{0};
    auto b = sweep_pairings(
        6, 2, true, [&](const PairingView&) { ++visited; },
        EnumerationBudget{}, 2);
    CHECK(a.total_pairings == b.total_pairings);
    CHECK(a.simple == b.simple);
    CHECK(visited.load() == b.simple);
    CHECK(serial.size() > 1);
    CHECK(phi_preimage_histogram(6, 2) == phi_preimage_histogram(6, 2, {}, 2));
}

TEST_CASE("pairing views rebuild labeled graphs whose profile matches") {
    std::uint64_t inspected = 0;
    sweep_pairings(4, 3, true, [&](const PairingView& v) {
        PortLabeledGraph pl = v.to_port_labeled();
        RevealProfile p = encode_phi(pl);
        REQUIRE(p.bits.size() == v.phi_bits->size());
        for (std::size_t k = 0; k < p.bits.size(); ++k)
            CHECK(p.bits[k] == (*v.phi_bits)[k]);
        ++inspected;
    });
    CHECK(inspected == 1296);
    // spot-check a sparser space too
    inspected = 0;
    sweep_pairings(5, 2, true, [&](const PairingView& v) {
        if (++inspected % 7) return;
        PortLabeledGraph pl = v.to_port_labeled();
        CHECK(encode_phi(pl).weight() ==
              static_cast<std::uint32_t>(phi_weight_fast(pl.graph())));
    });
}

TEST_CASE("labeled graph enumeration matches the cycle census oracle") {
    for (std::uint32_t n = 3; n <= 9; ++n) {
        std::uint64_t got = enumerate_regular_graphs(n, 2, {});
        CHECK(Int(got) == oracle::two_regular_count(n, 0));
    }
    CHECK(enumerate_regular_graphs(6, 2, {}) == 70);
    CHECK(enumerate_regular_graphs(9, 2, {}) == 30016);
    CHECK(enumerate_regular_graphs(4, 3, {}) == 1);
    CHECK(enumerate_regular_graphs(6, 3, {}) == 70);
    CHECK(enumerate_regular_graphs(8, 3, {}) == 19355);
    CHECK(enumerate_regular_graphs(5, 4, {}) == 1);
    CHECK(enumerate_regular_graphs(7, 4, {}) == 465);  // complement of 2-regular
}

TEST_CASE("enumerated views carry exact triangle counts") {
    std::uint64_t seen = 0;
    enumerate_regular_graphs(6, 3, [&](const GraphView& v) {
        RegularGraph g = v.materialize();
        CHECK(v.triangles == count_triangles(g));
        CHECK(g.degree() == 3);
        ++seen;
    });
    CHECK(seen == 70);
}

TEST_CASE("full enumeration ties pairings to graphs") {
    EnumerationResult r = enumerate_full(6, 2);
    CHECK(r.total_pairings == 10395);
    CHECK(r.simple_pairings == 4480);
    CHECK(r.graph_count == 70);
    CHECK(r.pairing_graph_identity);
    CHECK(r.count_by_triangles.at(0) == 60);
    CHECK(r.count_by_triangles.at(2) == 10);
    std::uint64_t mass = 0, weighted = 0;
    for (auto& [bits, cnt] : r.phi_histogram) {
        mass += cnt;
        std::uint32_t w = 0;
        for (std::uint32_t k = 0; k < 6; ++k) w += bits >> k & 1;
        if (w == 2) weighted += cnt;
    }
    CHECK(mass == 4480);
    CHECK(r.phi_histogram.at(0) == 3840);  // 60 cycle graphs x 2^6 labelings
    CHECK(weighted == 640);                // the two-triangle labelings

    EnumerationResult k4 = enumerate_full(4, 3);
    CHECK(k4.graph_count == 1);
    CHECK(k4.simple_pairings == 1296);
    CHECK(k4.phi_histogram.size() == 1);
    CHECK(k4.phi_histogram.at(0b111000) == 1296);
    CHECK(k4.pairing_graph_identity);
}

TEST_CASE("budgets refuse oversized sweeps") {
    EnumerationBudget tiny;
    tiny.max_pairings = 100;
    CHECK_THROWS_AS(sweep_pairings(6, 2, false, {}, tiny), BudgetExceeded);
    EnumerationBudget small_graphs;
    small_graphs.max_graph_estimate = 10.0;
    CHECK_THROWS_AS(enumerate_regular_graphs(8, 3, {}, small_graphs),
                    BudgetExceeded);
    CHECK_THROWS_AS(enumerate_regular_graphs(16, 3, {}), BudgetExceeded);
    CHECK_THROWS_AS(sweep_pairings(34, 2, false, {}), BudgetExceeded);
}

TEST_CASE("conditioned counts against the oracle") {
    CHECK(exact_conditioned_count(6, 2, Rational(1)) == 10);
    CHECK(exact_conditioned_count(6, 2, Rational(0)) == 70);
    CHECK(exact_conditioned_count(9, 2, Rational(1)) == 280);
    for (std::uint32_t n = 4; n <= 9; ++n)
        for (int num = 0; num <= 3; ++num) {
            Rational c(num, 3);
            Int threshold = ceil_rational(c * t_max(n, 2));
            CHECK(Int(exact_conditioned_count(n, 2, c)) ==
                  oracle::two_regular_count(n, threshold.convert_to<std::uint32_t>()));
        }
    CHECK(exact_conditioned_count(6, 3, Rational(1)) == 0);  // T=6 unreachable
    CHECK(exact_conditioned_count(4, 3, Rational(1)) == 1);  // K4
}

TEST_CASE("k-clique conditioned counts") {
    CHECK(exact_k_clique_conditioned_count(8, 3, Rational(1), 4) == 35);
    CHECK(exact_k_clique_conditioned_count(8, 3, Rational(1, 2), 4) == 35);
    CHECK(exact_k_clique_conditioned_count(8, 3, Rational(0), 4) == 19355);
    CHECK(exact_k_clique_conditioned_count(6, 2, Rational(1), 3) == 10);
    CHECK(exact_k_clique_conditioned_count(4, 3, Rational(1), 4) == 1);
}

TEST_CASE("clique-component-free counts") {
    // 2-regular: a triangle is a K_3 component, so triangle-free == K_3-free
    for (std::uint32_t n = 4; n <= 9; ++n) {
        Int with_triangles = oracle::two_regular_count(n, 1);
        Int total = oracle::two_regular_count(n, 0);
        CHECK(Int(exact_clique_component_free_count(n, 2)) ==
              total - with_triangles);
    }
    CHECK(exact_clique_component_free_count(8, 3) == 19355 - 35);
    CHECK(exact_clique_component_free_count(4, 3) == 0);  // K4 is everything
    CHECK(exact_clique_component_free_count(0, 2) == 1);
}

TEST_CASE("preimage histogram over simple pairings") {
    auto hist = phi_preimage_histogram(4, 3);
    CHECK(hist.size() == 1);
    CHECK(hist.at(0b111000) == 1296);
    auto hist2 = phi_preimage_histogram(6, 2);
    std::uint64_t mass = 0;
    for (auto& [bits, cnt] : hist2) mass += cnt;
    CHECK(mass == 4480);
    CHECK(hist2.at(0) == 3840);
}
