#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "regtri/report_json.hpp"

using namespace regtri;

namespace {

RegularGraph fixture(const std::string& name) {
    return read_edge_list_file(std::string(TEST_DATA_DIR) + "/" + name);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace

TEST_CASE("rational parsing and printing") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational(" 7 ") == Rational(7));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("-1.5e-2") == Rational(-3, 200));
    CHECK(parse_rational("1e3") == Rational(1000));
    CHECK(rational_str(Rational(3, 4)) == "3/4");
    CHECK(rational_str(Rational(5)) == "5");
    CHECK(parse_rational(rational_str(Rational(-22, 7))) == Rational(-22, 7));
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("1.5/2"), ParseError);
}

TEST_CASE("stable float rendering and checksums") {
    BigFloat third = BigFloat(1) / 3;
    CHECK(bigfloat_str(third) == bigfloat_str(BigFloat(1) / 3));
    CHECK(bigfloat_str(third).find("3.333333") == 0);
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("hello") != fnv1a64("hellp"));
}

TEST_CASE("census artifact") {
    nlohmann::json j = census_json(fixture("k4.edges"), 4);
    CHECK(j["schema_version"] == kSchemaVersion);
    CHECK(j["n"] == 4);
    CHECK(j["d"] == 3);
    CHECK(j["edge_count"] == 6);
    CHECK(j["triangles"] == 4);
    CHECK(j["t_histogram"] == nlohmann::json{{"2", 6}});
    CHECK(j["t_max"] == "4");
    CHECK(j["clique_counts"]["3"] == 4);
    CHECK(j["clique_counts"]["4"] == 1);
    CHECK(j["clique_count_caps"]["4"] == "1");
}

TEST_CASE("profile artifact") {
    RevealProfile p = encode_phi(PortLabeledGraph::with_sorted_ports(fixture("k4.edges")));
    nlohmann::json j = profile_json(p);
    CHECK(j["bits"] == "000111");
    CHECK(j["length"] == 6);
    CHECK(j["weight"] == 3);
    CHECK(j["rle"] == "3,3");
}

TEST_CASE("bound sheet artifacts") {
    BoundSheet full = make_bound_sheet(6, 2, Rational(1),
                                       ResidualTerm::exact(1), Int(10));
    nlohmann::json j = bound_sheet_json(full);
    CHECK(j["n"] == 6);
    CHECK(j["c"] == "1");
    CHECK(j["t_c"] == "2");
    CHECK(j["preimage_weight"] == 1);
    CHECK(j["upper_defined"] == true);
    CHECK(j.contains("upper_count_log"));
    CHECK(j.contains("exact_log"));
    CHECK(j["lower"]["defined"] == true);
    CHECK(j["lower"]["certified"] == true);
    CHECK(j["lower"]["b"] == 2);
    CHECK(j["lower"]["m"] == 0);
    CHECK(j["lower"].contains("log"));
    CHECK(j["residual_mode"] == "exact");
    CHECK(j["rate_fixed_d"] == "1/3");

    BoundSheet partial = make_bound_sheet(10, 4, Rational(1, 2),
                                          ResidualTerm::gdn_heuristic(5, 4));
    nlohmann::json p = bound_sheet_json(partial);
    CHECK(p["upper_defined"] == false);
    CHECK_FALSE(p.contains("upper_count_log"));
    CHECK_FALSE(p.contains("exact_log"));
    CHECK(p["residual_mode"] == "gdn");
    CHECK(p["lower"]["certified"] == false);

    auto header = split_csv(bound_sheet_csv_header());
    CHECK(header.size() == 17);
    CHECK(header.front() == "n");
    CHECK(header.back() == "exact_log");
    auto row_full = split_csv(bound_sheet_csv_row(full));
    REQUIRE(row_full.size() == 17);
    CHECK(row_full[0] == "6");
    CHECK(row_full[2] == "1");
    CHECK(row_full[6] == "1");
    CHECK(!row_full[7].empty());
    CHECK(row_full[8] == "1");
    CHECK(row_full[13] == "exact");
    auto row_partial = split_csv(bound_sheet_csv_row(partial));
    REQUIRE(row_partial.size() == 17);
    CHECK(row_partial[6] == "0");
    CHECK(row_partial[7].empty());   // no upper bound
    CHECK(row_partial[16].empty());  // no exact count
}

TEST_CASE("structure artifact") {
    StructureReport rep = structure_report(fixture("two_triangles.edges"),
                                           StructureMode::FixedD);
    nlohmann::json j = structure_json(rep);
    CHECK(j["mode"] == "fixed_d");
    CHECK(j["block_count"] == 2);
    CHECK(j["blocks"][0] == nlohmann::json::array({0, 1, 2}));
    CHECK(j["coverage_fraction"] == "1");
    CHECK(j["total_triangles"] == 2);
    CHECK(j["claims_checked"] == false);
    CHECK(j["badness"]["bad_edge_count"] == 6);
    CHECK(j["badness"]["bad_nodes_fixed"] == nlohmann::json::array());
    CHECK(j["warnings"] == nlohmann::json::array());
    CHECK(j.contains("eps_n"));
}

TEST_CASE("planted spec round trip") {
    PlantedSpec spec = PlantedSpec::clique_family(20, 3, Rational(1, 2));
    nlohmann::json j = planted_spec_json(spec);
    CHECK(j["kind"] == "clique");
    CHECK(j["b"] == 3);
    CHECK(j["m"] == 8);
    CHECK(j["block_size"] == 4);
    PlantedSpec back = planted_spec_from_json(j);
    CHECK(back.n == spec.n);
    CHECK(back.d == spec.d);
    CHECK(back.c == spec.c);
    CHECK(back.b == spec.b);
    CHECK(back.m == spec.m);
    CHECK(back.kind == spec.kind);

    PlantedSpec matched = PlantedSpec::with_blocks(12, 4, Rational(1, 2), 2,
                                                   BlockKind::MatchedComplement);
    nlohmann::json mj = planted_spec_json(matched);
    CHECK(mj["kind"] == "matched_complement");
    CHECK(mj["block_size"] == 6);
    PlantedSpec mback = planted_spec_from_json(mj);
    CHECK(mback.kind == BlockKind::MatchedComplement);
    CHECK(mback.m == 0);

    nlohmann::json bad = j;
    bad["kind"] = "mystery";
    CHECK_THROWS_AS(planted_spec_from_json(bad), ParseError);
    nlohmann::json infeasible = j;
    infeasible["b"] = 99;
    CHECK_THROWS_AS(planted_spec_from_json(infeasible), InfeasibleSpec);
}

TEST_CASE("enumeration artifact") {
    nlohmann::json j = enumeration_json(enumerate_full(4, 3));
    CHECK(j["total_pairings"] == "10395");
    CHECK(j["simple_pairings"] == 1296);
    CHECK(j["graph_count"] == 1);
    CHECK(j["pairing_graph_identity"] == true);
    CHECK(j["count_by_triangles"] == nlohmann::json{{"4", 1}});
    CHECK(j["phi_histogram"] == nlohmann::json{{"000111", 1296}});
}

TEST_CASE("trace artifacts") {
    ChainTrace t;
    t.threshold = 5;
    t.total_proposals = 2000;
    t.accepted = 700;
    t.reached_threshold = true;
    t.rows.push_back(TraceRow{1000, 'a', 0.5, 3, 0.4});
    t.rows.push_back(TraceRow{2000, 'r', 0.0, 5, 0.1});
    nlohmann::json j = trace_json(t);
    CHECK(j["threshold"] == 5);
    CHECK(j["reached_threshold"] == true);
    REQUIRE(j["rows"].size() == 2);
    CHECK(j["rows"][0]["phase"] == "a");
    CHECK(j["rows"][1]["phase"] == "r");
    CHECK(j["rows"][0]["triangles"] == 3);

    std::string csv = trace_csv(t);
    CHECK(csv.find("step,phase,beta,triangles,accept_rate\n") == 0);
    CHECK(csv.back() == '\n');
    auto lines = std::count(csv.begin(), csv.end(), '\n');
    CHECK(lines == 3);
    CHECK(csv.find("1000,a,") != std::string::npos);
    CHECK(csv.find("2000,r,") != std::string::npos);
}

TEST_CASE("artifact dumps are canonical") {
    nlohmann::json j = census_json(fixture("k4.edges"), 3);
    std::string dump = dump_artifact(j);
    CHECK(dump.back() == '\n');
    CHECK(dump.substr(0, 2) == "{\n");
    CHECK(dump.find("  \"clique_count_caps\"") != std::string::npos);
    // std::map storage keeps keys sorted
    CHECK(dump.find("\"clique_count_caps\"") < dump.find("\"clique_counts\""));
    CHECK(dump.find("\"clique_counts\"") < dump.find("\"edge_count\""));
    CHECK(dump_artifact(j) == dump);
}
