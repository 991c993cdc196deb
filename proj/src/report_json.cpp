#include "regtri/report_json.hpp"

#include <sstream>

namespace regtri {

namespace {

using nlohmann::json;

std::string profile_key(std::uint32_t bits, std::uint32_t length) {
    std::string s(length, '0');
    for (std::uint32_t k = 0; k < length; ++k)
        if (bits >> k & 1u) s[k] = '1';
    return s;
}

std::string residual_mode_str(ResidualMode mode) {
    switch (mode) {
        case ResidualMode::ExactCount: return "exact";
        case ResidualMode::GdnHeuristic: return "gdn";
        case ResidualMode::UserLog: return "user";
    }
    throw Error("unknown residual mode");
}

std::string float_str(double x) { return bigfloat_str(BigFloat(x)); }

} // namespace

json census_json(const RegularGraph& g, std::uint32_t k_max) {
    EdgeTriangleTable table = edge_triangle_table(g);
    json t_hist = json::object();
    for (const auto& [t, count] : table.histogram())
        t_hist[std::to_string(t)] = count;
    json cliques = json::object();
    json k_caps = json::object();
    for (std::uint32_t k = 3; k <= k_max; ++k) {
        cliques[std::to_string(k)] = count_k_cliques(g, k);
        k_caps[std::to_string(k)] = rational_str(t_k_max(g.node_count(), g.degree(), k));
    }
    return json{
        {"schema_version", kSchemaVersion},
        {"n", g.node_count()},
        {"d", g.degree()},
        {"edge_count", g.edges().size()},
        {"triangles", table.triangle_total},
        {"t_histogram", t_hist},
        {"t_max", rational_str(t_max(g.node_count(), g.degree()))},
        {"clique_counts", cliques},
        {"clique_count_caps", k_caps},
    };
}

json profile_json(const RevealProfile& p) {
    std::string bits(p.bits.size(), '0');
    for (std::size_t k = 0; k < p.bits.size(); ++k)
        if (p.bits[k]) bits[k] = '1';
    return json{
        {"schema_version", kSchemaVersion},
        {"bits", bits},
        {"length", p.bits.size()},
        {"weight", p.weight()},
        {"rle", p.rle()},
    };
}

json bound_sheet_json(const BoundSheet& sheet) {
    json lower{
        {"defined", sheet.lower.defined},
        {"certified", sheet.lower.certified},
        {"b", sheet.lower.b},
        {"m", sheet.lower.m},
    };
    if (sheet.lower.defined) lower["log"] = bigfloat_str(sheet.lower.log_value);
    json j{
        {"schema_version", kSchemaVersion},
        {"n", sheet.n},
        {"d", sheet.d},
        {"c", rational_str(sheet.c)},
        {"t_c", rational_str(sheet.t_c)},
        {"preimage_weight", sheet.preimage_weight},
        {"preimage_bound_log", bigfloat_str(sheet.preimage_bound_log)},
        {"upper_defined", sheet.upper_defined},
        {"lower", lower},
        {"residual_mode", residual_mode_str(sheet.residual_mode)},
        {"rate_fixed_d", rational_str(sheet.rate_fixed_d)},
        {"rate_growing_d", rational_str(sheet.rate_growing_d)},
    };
    if (sheet.upper_defined)
        j["upper_count_log"] = bigfloat_str(sheet.upper_count_log);
    if (sheet.exact_log) j["exact_log"] = bigfloat_str(*sheet.exact_log);
    return j;
}

std::string bound_sheet_csv_header() {
    return "n,d,c,t_c,preimage_weight,preimage_bound_log,upper_defined,"
           "upper_count_log,lower_defined,lower_log,lower_certified,b,m,"
           "residual_mode,rate_fixed_d,rate_growing_d,exact_log";
}

std::string bound_sheet_csv_row(const BoundSheet& sheet) {
    std::ostringstream out;
    out << sheet.n << ',' << sheet.d << ',' << rational_str(sheet.c) << ','
        << rational_str(sheet.t_c) << ',' << sheet.preimage_weight << ','
        << bigfloat_str(sheet.preimage_bound_log) << ','
        << (sheet.upper_defined ? 1 : 0) << ','
        << (sheet.upper_defined ? bigfloat_str(sheet.upper_count_log)
                                : std::string())
        << ',' << (sheet.lower.defined ? 1 : 0) << ','
        << (sheet.lower.defined ? bigfloat_str(sheet.lower.log_value)
                                : std::string())
        << ',' << (sheet.lower.certified ? 1 : 0) << ',' << sheet.lower.b << ','
        << sheet.lower.m << ',' << residual_mode_str(sheet.residual_mode) << ','
        << rational_str(sheet.rate_fixed_d) << ','
        << rational_str(sheet.rate_growing_d) << ','
        << (sheet.exact_log ? bigfloat_str(*sheet.exact_log) : std::string());
    return out.str();
}

json structure_json(const StructureReport& r) {
    json badness{
        {"delta", rational_str(r.badness.delta)},
        {"bad_edge_count", r.badness.bad_edges.size()},
        {"bad_edge_fraction", rational_str(r.badness.bad_edge_fraction)},
        {"bad_nodes_fixed", r.badness.bad_nodes_fixed},
        {"bad_node_fixed_fraction", rational_str(r.badness.bad_node_fixed_fraction)},
        {"bad_nodes_growing", r.badness.bad_nodes_growing},
        {"bad_node_growing_fraction",
         rational_str(r.badness.bad_node_growing_fraction)},
    };
    return json{
        {"schema_version", kSchemaVersion},
        {"mode", r.mode == StructureMode::FixedD ? "fixed_d" : "growing_d"},
        {"delta", rational_str(r.delta)},
        {"blocks", r.blocks},
        {"block_count", r.blocks.size()},
        {"spot_count", r.spot_count},
        {"total_triangles", r.total_triangles},
        {"covered_triangles", r.covered_triangles},
        {"coverage_fraction", rational_str(r.coverage_fraction)},
        {"badness", badness},
        {"eps_n", float_str(r.eps_n)},
        {"warnings", r.warnings},
        {"claims_checked", r.claims_checked},
        {"claim_intersection", r.claim_intersection},
        {"claim_transitivity", r.claim_transitivity},
        {"claim_disjoint", r.claim_disjoint},
        {"size_bound_ok", r.size_bound_ok},
    };
}

json planted_spec_json(const PlantedSpec& spec) {
    return json{
        {"schema_version", kSchemaVersion},
        {"n", spec.n},
        {"d", spec.d},
        {"c", rational_str(spec.c)},
        {"b", spec.b},
        {"m", spec.m},
        {"kind", spec.kind == BlockKind::Clique ? "clique" : "matched_complement"},
        {"block_size", spec.block_size()},
    };
}

PlantedSpec planted_spec_from_json(const json& j) {
    PlantedSpec spec;
    spec.n = j.at("n").get<std::uint32_t>();
    spec.d = j.at("d").get<std::uint32_t>();
    spec.c = parse_rational(j.at("c").get<std::string>());
    spec.b = j.at("b").get<std::uint32_t>();
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "clique") spec.kind = BlockKind::Clique;
    else if (kind == "matched_complement") spec.kind = BlockKind::MatchedComplement;
    else throw ParseError("unknown block kind " + kind);
    spec.validate();
    return spec;
}

json enumeration_json(const EnumerationResult& r) {
    std::uint32_t length = r.n * r.d / 2;
    json by_t = json::object();
    for (const auto& [t, count] : r.count_by_triangles)
        by_t[std::to_string(t)] = count;
    json phi = json::object();
    for (const auto& [bits, count] : r.phi_histogram)
        phi[profile_key(bits, length)] = count;
    return json{
        {"schema_version", kSchemaVersion},
        {"n", r.n},
        {"d", r.d},
        {"total_pairings", r.total_pairings.str()},
        {"simple_pairings", r.simple_pairings},
        {"graph_count", r.graph_count},
        {"pairing_graph_identity", r.pairing_graph_identity},
        {"count_by_triangles", by_t},
        {"phi_histogram", phi},
    };
}

json trace_json(const ChainTrace& t) {
    json rows = json::array();
    for (const auto& row : t.rows)
        rows.push_back(json{
            {"step", row.step},
            {"phase", std::string(1, row.phase)},
            {"beta", float_str(row.beta)},
            {"triangles", row.triangles},
            {"accept_rate", float_str(row.accept_rate)},
        });
    return json{
        {"schema_version", kSchemaVersion},
        {"threshold", t.threshold},
        {"total_proposals", t.total_proposals},
        {"accepted", t.accepted},
        {"reached_threshold", t.reached_threshold},
        {"rows", rows},
    };
}

std::string trace_csv(const ChainTrace& t) {
    std::ostringstream out;
    out << "step,phase,beta,triangles,accept_rate\n";
    for (const auto& row : t.rows)
        out << row.step << ',' << row.phase << ',' << float_str(row.beta) << ','
            << row.triangles << ',' << float_str(row.accept_rate) << '\n';
    return out.str();
}

std::string dump_artifact(const nlohmann::json& j) { return j.dump(2) + "\n"; }

} // namespace regtri
