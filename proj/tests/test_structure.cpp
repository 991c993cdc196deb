#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "regtri/census.hpp"
#include "regtri/generators.hpp"
#include "regtri/graph.hpp"
#include "regtri/structure.hpp"

using namespace regtri;

namespace {

RegularGraph fixture(const std::string& name) {
    return read_edge_list_file(std::string(TEST_DATA_DIR) + "/" + name);
}

// Two diamonds (K4 minus an edge) joined by two bridges: triangles at
// {0,1,2},{0,1,3},{4,6,7},{5,6,7}; edges 2-4 and 3-5 lie on none.
RegularGraph double_diamond() {
    std::vector<Edge> edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 4},
                               {3, 5}, {4, 6}, {4, 7}, {5, 6}, {5, 7}, {6, 7}};
    return RegularGraph::from_edges(8, 3, std::move(edges));
}

// b disjoint complete blocks K_{d+1}.
RegularGraph clique_blocks(std::uint32_t b, std::uint32_t d) {
    std::vector<Edge> edges;
    std::uint32_t s = d + 1;
    for (std::uint32_t blk = 0; blk < b; ++blk)
        for (std::uint32_t i = 0; i < s; ++i)
            for (std::uint32_t j = i + 1; j < s; ++j)
                edges.push_back(Edge{blk * s + i, blk * s + j});
    return RegularGraph::from_edges(b * s, d, std::move(edges));
}

// K_{d+2} minus the perfect matching i <-> i + (d+2)/2; d-regular.
RegularGraph matched_block(std::uint32_t d) {
    std::uint32_t s = d + 2, half = s / 2;
    std::vector<Edge> edges;
    for (std::uint32_t i = 0; i < s; ++i)
        for (std::uint32_t j = i + 1; j < s; ++j)
            if (j != i + half) edges.push_back(Edge{i, j});
    return RegularGraph::from_edges(s, d, std::move(edges));
}

} // namespace

TEST_CASE("badness census on the prism") {
    RegularGraph g = fixture("prism.edges");
    BadnessReport r0 = classify_badness(g, Rational(0));
    CHECK(r0.bad_edges.size() == 6);  // the six t=1 triangle edges
    CHECK(r0.bad_edge_fraction == Rational(6, 9));
    CHECK(r0.bad_nodes_fixed.size() == 6);  // on triangles, no K4 anywhere
    CHECK(r0.bad_node_fixed_fraction == Rational(1));
    CHECK(r0.bad_nodes_growing.size() == 6);

    // boundary included: t = 1 = d-1-delta*d still bad at delta = 1/3
    BadnessReport r13 = classify_badness(g, Rational(1, 3));
    CHECK(r13.bad_edges.size() == 6);

    // boundary below 1: nothing qualifies
    BadnessReport r23 = classify_badness(g, Rational(2, 3));
    CHECK(r23.bad_edges.empty());
    CHECK(r23.bad_nodes_growing.empty());
    CHECK(r23.bad_nodes_fixed.size() == 6);  // fixed sense ignores delta

    CHECK_THROWS_AS(classify_badness(g, Rational(-1, 2)), Error);
    CHECK_THROWS_AS(classify_badness(g, Rational(3, 2)), Error);
}

TEST_CASE("badness census distinguishes clique membership") {
    // two_triangles: every node's triangle is a K_{d+1}, so no fixed-bad nodes
    RegularGraph tt = fixture("two_triangles.edges");
    BadnessReport r = classify_badness(tt, Rational(0));
    CHECK(r.bad_edges.size() == 6);  // t=1 <= d-1 = 1
    CHECK(r.bad_nodes_fixed.empty());

    RegularGraph pet = fixture("petersen.edges");
    BadnessReport rp = classify_badness(pet, Rational(0));
    CHECK(rp.bad_edges.empty());  // triangle-free
    CHECK(rp.bad_nodes_fixed.empty());
    CHECK(rp.bad_nodes_growing.empty());

    // K4: edges sit at t = d-1 = 2, bad in the closed-boundary census, yet
    // every node is saved by its clique
    RegularGraph k4 = fixture("k4.edges");
    BadnessReport rk = classify_badness(k4, Rational(0));
    CHECK(rk.bad_edges.size() == 6);
    CHECK(rk.bad_nodes_fixed.empty());
}

TEST_CASE("badness census on the double diamond") {
    RegularGraph g = double_diamond();
    BadnessReport r = classify_badness(g, Rational(0));
    CHECK(r.bad_edges.size() == 10);  // all but the two bridges
    CHECK(r.bad_nodes_fixed.size() == 8);
    CHECK(count_triangles(g) == 4);
}

TEST_CASE("d+1 clique listing") {
    RegularGraph tt = fixture("two_triangles.edges");
    std::vector<std::vector<std::uint32_t>> want = {{0, 1, 2}, {3, 4, 5}};
    CHECK(find_d_plus_1_cliques(tt) == want);
    CHECK(find_d_plus_1_cliques(fixture("prism.edges")).empty());
    std::vector<std::vector<std::uint32_t>> k4 = {{0, 1, 2, 3}};
    CHECK(find_d_plus_1_cliques(fixture("k4.edges")) == k4);

    RegularGraph blocks = clique_blocks(2, 20);
    auto found = find_d_plus_1_cliques(blocks);
    REQUIRE(found.size() == 2);
    CHECK(found[0].size() == 21);
    CHECK(found[0].front() == 0);
    CHECK(found[1].front() == 21);
}

TEST_CASE("stripping triangle-free edges") {
    RegularGraph g = fixture("prism.edges");
    StrippedGraph sg = strip_triangle_free_edges(g);
    CHECK(sg.n == 6);
    CHECK(sg.edges.size() == 6);
    for (auto t : sg.t) CHECK(t == 1);
    CHECK(sg.has_edge(0, 1));
    CHECK_FALSE(sg.has_edge(0, 3));  // matching edge dropped
    CHECK_FALSE(sg.has_edge(0, 0));

    StrippedGraph dd = strip_triangle_free_edges(double_diamond());
    CHECK(dd.edges.size() == 10);
    CHECK_FALSE(dd.has_edge(2, 4));
    CHECK_FALSE(dd.has_edge(3, 5));

    StrippedGraph pet = strip_triangle_free_edges(fixture("petersen.edges"));
    CHECK(pet.edges.empty());
}

TEST_CASE("dense spot gate") {
    RegularGraph pet = fixture("petersen.edges");
    CHECK_THROWS_AS(dense_spot_from_edge(pet, Edge{0, 1}, Rational(1, 20)),
                    NotAGoodEdge);  // no triangle

    RegularGraph prism = fixture("prism.edges");
    // t = 1 below the boundary d-1-delta*d = 2
    CHECK_THROWS_AS(dense_spot_from_edge(prism, Edge{0, 1}, Rational(0)),
                    NotAGoodEdge);
    // boundary 0 at delta = 2/3: the triangle comes back as a spot
    auto spot = dense_spot_from_edge(prism, Edge{0, 1}, Rational(2, 3));
    REQUIRE(spot.has_value());
    std::vector<std::uint32_t> tri = {0, 1, 2};
    CHECK(spot->nodes == tri);

    // good edge, but both endpoints carry strictly-bad edges
    RegularGraph dd = double_diamond();
    CHECK_THROWS_AS(dense_spot_from_edge(dd, Edge{0, 1}, Rational(0)),
                    NotAGoodEdge);
    CHECK_THROWS_AS(dense_spot_from_edge(dd, Edge{6, 7}, Rational(0)),
                    NotAGoodEdge);

    CHECK_THROWS_AS(dense_spot_from_edge(prism, Edge{0, 4}, Rational(0)), Error);
    CHECK_THROWS_AS(dense_spot_from_edge(prism, Edge{1, 1}, Rational(0)), Error);
    CHECK_THROWS_AS(dense_spot_from_edge(prism, Edge{0, 9}, Rational(0)), Error);
}

TEST_CASE("dense spots recover clique blocks") {
    RegularGraph g = clique_blocks(2, 20);
    auto spot = dense_spot_from_edge(g, Edge{0, 1}, Rational(1, 20));
    REQUIRE(spot.has_value());
    CHECK(spot->nodes.size() == 21);
    CHECK(spot->nodes.front() == 0);
    CHECK(spot->nodes.back() == 20);

    auto other = dense_spot_from_edge(g, Edge{21, 41}, Rational(1, 20));
    REQUIRE(other.has_value());
    CHECK(other->nodes.front() == 21);
}

TEST_CASE("pseudo-clique assembly on disjoint cliques") {
    RegularGraph g = clique_blocks(2, 20);
    StructureReport rep = assemble_pseudo_cliques(g, Rational(1, 20));
    CHECK(rep.mode == StructureMode::GrowingD);
    CHECK(rep.warnings.empty());  // delta*d = 1 and delta < 1/16
    CHECK(rep.spot_count == 2);   // each block collapses to one spot
    REQUIRE(rep.blocks.size() == 2);
    CHECK(rep.blocks[0].size() == 21);
    CHECK(rep.blocks[1].size() == 21);
    CHECK(rep.claims_checked);
    CHECK(rep.claim_intersection);
    CHECK(rep.claim_transitivity);
    CHECK(rep.claim_disjoint);
    CHECK(rep.size_bound_ok);
    CHECK(rep.total_triangles == 2 * 1330);  // 2 * C(21,3)
    CHECK(rep.covered_triangles == rep.total_triangles);
    CHECK(rep.coverage_fraction == Rational(1));
}

TEST_CASE("pseudo-clique assembly on a matched-complement block") {
    // K22 minus a perfect matching: every edge has t = 18, exactly the spot
    // boundary at delta = 1/20, and each spot drops the endpoints' partners
    RegularGraph g = matched_block(20);
    StructureReport rep = assemble_pseudo_cliques(g, Rational(1, 20));
    CHECK(rep.warnings.empty());
    CHECK(rep.spot_count == 220);  // one 20-node spot per edge
    REQUIRE(rep.blocks.size() == 1);
    CHECK(rep.blocks[0].size() == 22);
    CHECK(rep.claim_intersection);
    CHECK(rep.claim_transitivity);
    CHECK(rep.claim_disjoint);
    CHECK(rep.size_bound_ok);  // 22 <= (0.6/0.35)*21 = 36
    CHECK(rep.total_triangles == 1320);
    CHECK(rep.coverage_fraction == Rational(1));

    // same delta, closed-boundary census: every edge counts as bad there
    CHECK(rep.badness.bad_edges.size() == 220);
}

TEST_CASE("pseudo-clique assembly warns out of regime") {
    RegularGraph prism = fixture("prism.edges");
    StructureReport rep = assemble_pseudo_cliques(prism, Rational(1, 10));
    CHECK(rep.warnings.size() == 2);  // delta*d < 1 and delta >= 1/16
    CHECK(rep.spot_count == 0);       // t=1 < boundary 1.7: no good edges
    CHECK(rep.blocks.empty());
    CHECK(rep.covered_triangles == 0);
    CHECK(rep.total_triangles == 2);
    CHECK(rep.coverage_fraction == 0);
    CHECK(rep.claims_checked);
    CHECK(rep.claim_intersection);      // vacuous
    CHECK_FALSE(rep.claim_transitivity);  // not checked at delta >= 1/16
    CHECK_FALSE(rep.size_bound_ok);
}

TEST_CASE("structure report in fixed-d mode") {
    RegularGraph tt = fixture("two_triangles.edges");
    StructureReport rep = structure_report(tt, StructureMode::FixedD);
    CHECK(rep.mode == StructureMode::FixedD);
    REQUIRE(rep.blocks.size() == 2);
    CHECK(rep.blocks[0] == std::vector<std::uint32_t>{0, 1, 2});
    CHECK(rep.total_triangles == 2);
    CHECK(rep.covered_triangles == 2);
    CHECK(rep.coverage_fraction == Rational(1));
    CHECK(rep.badness.bad_nodes_fixed.empty());
    CHECK(rep.eps_n > 0.0);
    CHECK(rep.eps_n < 1.0);

    StructureReport prism = structure_report(fixture("prism.edges"),
                                             StructureMode::FixedD);
    CHECK(prism.blocks.empty());
    CHECK(prism.covered_triangles == 0);
    CHECK(prism.coverage_fraction == 0);
    CHECK(prism.badness.bad_nodes_fixed.size() == 6);

    StructureReport pet = structure_report(fixture("petersen.edges"),
                                           StructureMode::FixedD);
    CHECK(pet.total_triangles == 0);
    CHECK(pet.coverage_fraction == 0);
    CHECK(pet.blocks.empty());
}

TEST_CASE("structure report on a planted clique family") {
    RegularGraph g = plant_clique_family(PlantedSpec::clique_family(20, 3, 1), 11);
    StructureReport rep = structure_report(g, StructureMode::FixedD);
    CHECK(rep.blocks.size() == 5);
    CHECK(rep.total_triangles == 20);
    CHECK(rep.coverage_fraction == Rational(1));
    CHECK(rep.badness.bad_nodes_fixed.empty());
    // closed-boundary census at delta 0: every K4 edge sits at t = d-1
    CHECK(rep.badness.bad_edges.size() == 30);
}

TEST_CASE("structure report argument checks") {
    RegularGraph tt = fixture("two_triangles.edges");
    CHECK_THROWS_AS(structure_report(tt, StructureMode::GrowingD), Error);
    StructureReport rep =
        structure_report(tt, StructureMode::GrowingD, Rational(1, 2));
    CHECK(rep.mode == StructureMode::GrowingD);
    CHECK(rep.delta == Rational(1, 2));
}
