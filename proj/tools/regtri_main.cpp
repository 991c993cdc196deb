#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "regtri/acceptance.hpp"
#include "regtri/bounds.hpp"
#include "regtri/census.hpp"
#include "regtri/enumerate.hpp"
#include "regtri/generators.hpp"
#include "regtri/graph.hpp"
#include "regtri/report_json.hpp"
#include "regtri/reveal.hpp"
#include "regtri/sampler.hpp"
#include "regtri/structure.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace regtri;

namespace {

std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Collects artifacts for one run; writes them under --output (plus a manifest
// with checksums) or streams them to stdout when no directory was given.
struct ArtifactSink {
    std::string subcommand;
    std::string out_dir;
    json params = json::object();
    json artifacts = json::object();

    void put(const std::string& name, const std::string& text) {
        if (out_dir.empty()) {
            std::cout << text;
            if (!text.empty() && text.back() != '\n') std::cout << '\n';
            return;
        }
        fs::create_directories(out_dir);
        fs::path path = fs::path(out_dir) / name;
        std::ofstream out(path, std::ios::binary);
        out << text;
        if (!out) throw Error("cannot write " + path.string());
        char hex[17];
        std::snprintf(hex, sizeof(hex), "%016llx",
                      static_cast<unsigned long long>(fnv1a64(text)));
        artifacts[name] = json{{"path", path.string()}, {"fnv1a64", hex}};
    }

    void finish() {
        if (out_dir.empty()) return;
        json manifest{
            {"schema_version", kSchemaVersion},
            {"subcommand", subcommand},
            {"parameters", params},
            {"artifacts", artifacts},
            {"timestamp", utc_timestamp()},
        };
        fs::path path = fs::path(out_dir) / "manifest.json";
        std::ofstream out(path, std::ios::binary);
        out << dump_artifact(manifest);
        if (!out) throw Error("cannot write " + path.string());
    }
};

struct CommonFlags {
    std::uint32_t n = 0, d = 0, k = 3;
    std::string c_str, delta_str, eps_str;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    std::string format = "json";
    std::string input, output;
};

Rational parse_c(const std::string& s) {
    Rational c = parse_rational(s);
    if (c < 0 || c > 1) throw Error("c must lie in [0,1]");
    return c;
}

int run_generate(const CommonFlags& f, const std::string& kind) {
    ArtifactSink sink{"generate", f.output};
    sink.params = {{"n", f.n}, {"d", f.d}, {"kind", kind}, {"seed", f.seed}};
    RegularGraph g = [&] {
        if (kind == "config") return sample_configuration_model(f.n, f.d, f.seed);
        Rational c = parse_c(f.c_str.empty() ? "1/2" : f.c_str);
        sink.params["c"] = rational_str(c);
        PlantedSpec spec = kind == "clique"
                               ? PlantedSpec::clique_family(f.n, f.d, c)
                               : PlantedSpec::matched_complement_family(f.n, f.d, c);
        sink.put("planted.json", dump_artifact(planted_spec_json(spec)));
        return kind == "clique" ? plant_clique_family(spec, f.seed)
                                : plant_matched_complement_family(spec, f.seed);
    }();
    sink.put("graph.edges", edge_list_string(g));
    sink.finish();
    return 0;
}

int run_census(const CommonFlags& f) {
    ArtifactSink sink{"census", f.output};
    sink.params = {{"input", f.input}, {"k", f.k}};
    RegularGraph g = read_edge_list_file(f.input);
    sink.put("census.json", dump_artifact(census_json(g, f.k)));
    sink.finish();
    return 0;
}

int run_phi(const CommonFlags& f, std::uint64_t samples) {
    ArtifactSink sink{"phi", f.output};
    sink.params = {{"input", f.input}, {"seed", f.seed}, {"samples", samples}};
    RegularGraph g = read_edge_list_file(f.input);
    PortLabeledGraph pl = PortLabeledGraph::with_sorted_ports(g);
    json j = profile_json(encode_phi(pl));
    j["fast_weight"] = phi_weight_fast(g);
    j["expected_weight"] = rational_str(expected_phi_exact(g));
    if (g.node_count() <= 9) {
        auto exact = mean_phi_over_permutations_exact(g);
        j["permutation_mean"] = rational_str(exact.mean);
        j["permutations"] = exact.permutations.str();
    } else {
        auto mc = mean_phi_over_permutations_mc(g, samples, f.seed);
        j["permutation_mean_mc"] = bigfloat_str(BigFloat(mc.mean));
        j["permutation_mean_se"] = bigfloat_str(BigFloat(mc.std_error));
    }
    if (!f.c_str.empty()) {
        Rational c = parse_c(f.c_str);
        sink.params["c"] = rational_str(c);
        j["t_c"] = rational_str(t_c_value(g.node_count(), g.degree(), c));
        if (g.node_count() <= 9) {
            j["success_fraction"] =
                rational_str(permutation_success_fraction_exact(g, c));
        } else {
            auto mc = permutation_success_fraction_mc(g, c, samples, f.seed);
            j["success_fraction_mc"] = bigfloat_str(BigFloat(mc.mean));
            j["success_fraction_se"] = bigfloat_str(BigFloat(mc.std_error));
        }
    }
    sink.put("phi.json", dump_artifact(j));
    sink.finish();
    return 0;
}

int run_bounds(const CommonFlags& f, const std::string& residual_log,
               bool exact) {
    ArtifactSink sink{"bounds", f.output};
    Rational c = parse_c(f.c_str);
    sink.params = {{"n", f.n}, {"d", f.d}, {"c", rational_str(c)},
                   {"format", f.format}};
    ResidualTerm residual = ResidualTerm::exact(0);
    try {
        residual = ResidualTerm::gdn_heuristic(
            PlantedSpec::clique_family(f.n, f.d, c).m, f.d);
    } catch (const Error&) {
        // no feasible clique family; the lower bound stays undefined
    }
    if (!residual_log.empty())
        residual = ResidualTerm::user_log(BigFloat(residual_log));
    std::optional<Int> exact_count;
    if (exact)
        exact_count = Int(exact_conditioned_count(f.n, f.d, c));
    BoundSheet sheet = make_bound_sheet(f.n, f.d, c, residual, exact_count);
    if (f.format == "csv") {
        sink.put("bounds.csv", bound_sheet_csv_header() + "\n" +
                                   bound_sheet_csv_row(sheet) + "\n");
    } else {
        json j = bound_sheet_json(sheet);
        if (!f.delta_str.empty() && !f.eps_str.empty()) {
            Rational delta = parse_rational(f.delta_str);
            Rational eps = parse_rational(f.eps_str);
            sink.params["delta"] = rational_str(delta);
            sink.params["eps"] = rational_str(eps);
            j["badness_bound_log"] =
                bigfloat_str(badness_bound_log(f.n, f.d, c, eps, delta));
        }
        sink.put("bounds.json", dump_artifact(j));
    }
    sink.finish();
    return 0;
}

int run_structure(const CommonFlags& f, const std::string& mode) {
    ArtifactSink sink{"structure", f.output};
    sink.params = {{"input", f.input}, {"mode", mode}};
    RegularGraph g = read_edge_list_file(f.input);
    StructureReport rep;
    if (mode == "fixed") {
        rep = structure_report(g, StructureMode::FixedD);
    } else {
        if (f.delta_str.empty()) throw Error("--delta is required for growing mode");
        Rational delta = parse_rational(f.delta_str);
        sink.params["delta"] = rational_str(delta);
        rep = structure_report(g, StructureMode::GrowingD, delta);
    }
    sink.put("structure.json", dump_artifact(structure_json(rep)));
    sink.finish();
    return 0;
}

int run_sample(const CommonFlags& f, std::uint64_t restricted_steps,
               std::uint64_t record_every, std::uint64_t max_steps) {
    ArtifactSink sink{"sample", f.output};
    Rational c = parse_c(f.c_str);
    sink.params = {{"n", f.n}, {"d", f.d}, {"c", rational_str(c)},
                   {"seed", f.seed}};
    ChainConfig cfg = ChainConfig::defaults(f.n, f.d, c, f.seed);
    if (restricted_steps) cfg.restricted_steps = restricted_steps;
    if (record_every) cfg.record_every = record_every;
    if (max_steps) cfg.max_steps = max_steps;
    SampleResult res = sample_conditioned(cfg);
    if (f.format == "csv") sink.put("trace.csv", trace_csv(res.trace));
    else sink.put("trace.json", dump_artifact(trace_json(res.trace)));
    sink.put("sample.edges", edge_list_string(res.graph));
    sink.finish();
    return 0;
}

int run_enumerate(const CommonFlags& f, bool has_c, bool has_k) {
    ArtifactSink sink{"enumerate", f.output};
    sink.params = {{"n", f.n}, {"d", f.d}};
    if (has_c) {
        Rational c = parse_c(f.c_str);
        sink.params["c"] = rational_str(c);
        json j{{"schema_version", kSchemaVersion}, {"n", f.n}, {"d", f.d},
               {"c", rational_str(c)}};
        if (has_k) {
            sink.params["k"] = f.k;
            j["k"] = f.k;
            j["count"] = exact_k_clique_conditioned_count(f.n, f.d, c, f.k);
        } else {
            j["count"] = exact_conditioned_count(f.n, f.d, c);
        }
        sink.put("count.json", dump_artifact(j));
    } else {
        sink.put("enumeration.json",
                 dump_artifact(enumeration_json(
                     enumerate_full(f.n, f.d, EnumerationBudget{}, f.jobs))));
    }
    sink.finish();
    return 0;
}

int run_certify(const CommonFlags& f) {
    AcceptanceOptions opt;
    opt.jobs = f.jobs;
    opt.work_dir = f.output;
    auto results = run_acceptance(opt, std::cout);
    std::cout << (all_passed(results) ? "ALL CRITERIA PASSED" : "CRITERIA FAILED")
              << std::endl;
    return all_passed(results) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Census, reveal-profile, bound, structure, sampling, and "
                 "enumeration tools for d-regular graphs with many triangles"};
    app.require_subcommand(1);
    CommonFlags f;

    auto* generate = app.add_subcommand("generate", "Emit a random or planted graph");
    std::string kind = "config";
    generate->add_option("--n", f.n, "node count")->required();
    generate->add_option("--d", f.d, "degree")->required();
    generate->add_option("--kind", kind, "config|clique|matched")
        ->check(CLI::IsMember({"config", "clique", "matched"}));
    generate->add_option("--c", f.c_str, "target triangle fraction (planted kinds)");
    generate->add_option("--seed", f.seed, "RNG seed")->required();
    generate->add_option("--output", f.output, "artifact directory");

    auto* census = app.add_subcommand("census", "Triangle and clique census");
    census->add_option("--input", f.input, "edge list file")->required();
    census->add_option("--k", f.k, "largest clique size to count")
        ->check(CLI::Range(3u, 64u));
    census->add_option("--output", f.output, "artifact directory");

    auto* phi = app.add_subcommand("phi", "Reveal profile and permutation stats");
    std::uint64_t samples = 100000;
    phi->add_option("--input", f.input, "edge list file")->required();
    phi->add_option("--seed", f.seed, "RNG seed")->required();
    phi->add_option("--c", f.c_str, "success threshold fraction");
    phi->add_option("--samples", samples, "Monte Carlo sample count");
    phi->add_option("--output", f.output, "artifact directory");

    auto* bounds = app.add_subcommand("bounds", "Count bound sheet at (n,d,c)");
    std::string residual_log;
    bool exact = false;
    bounds->add_option("--n", f.n, "node count")->required();
    bounds->add_option("--d", f.d, "degree")->required();
    bounds->add_option("--c", f.c_str, "triangle fraction")->required();
    bounds->add_option("--delta", f.delta_str, "badness threshold");
    bounds->add_option("--eps", f.eps_str, "badness mass");
    bounds->add_option("--residual-log", residual_log,
                       "log residual count overriding the heuristic");
    bounds->add_flag("--exact", exact, "add the enumerated count (small n only)");
    bounds->add_option("--format", f.format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    bounds->add_option("--output", f.output, "artifact directory");

    auto* structure = app.add_subcommand("structure", "Clique / pseudo-clique report");
    std::string mode = "fixed";
    structure->add_option("--input", f.input, "edge list file")->required();
    structure->add_option("--mode", mode, "fixed|growing")
        ->check(CLI::IsMember({"fixed", "growing"}));
    structure->add_option("--delta", f.delta_str, "badness threshold (growing)");
    structure->add_option("--output", f.output, "artifact directory");

    auto* sample = app.add_subcommand("sample", "Conditioned double-edge-swap chain");
    std::uint64_t restricted_steps = 0, record_every = 0, max_steps = 0;
    sample->add_option("--n", f.n, "node count")->required();
    sample->add_option("--d", f.d, "degree")->required();
    sample->add_option("--c", f.c_str, "triangle fraction")->required();
    sample->add_option("--seed", f.seed, "RNG seed")->required();
    sample->add_option("--restricted-steps", restricted_steps,
                       "proposals in the restricted phase");
    sample->add_option("--record-every", record_every, "trace row stride");
    sample->add_option("--max-steps", max_steps, "proposal cap before timeout");
    sample->add_option("--format", f.format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sample->add_option("--output", f.output, "artifact directory");

    auto* enumerate = app.add_subcommand("enumerate", "Exact small-case censuses");
    enumerate->add_option("--n", f.n, "node count")->required();
    enumerate->add_option("--d", f.d, "degree")->required();
    auto* c_opt = enumerate->add_option("--c", f.c_str, "conditioned count at c");
    auto* k_opt = enumerate->add_option("--k", f.k, "k-clique conditioning");
    enumerate->add_option("--jobs", f.jobs, "shard count for pairing sweeps");
    enumerate->add_option("--output", f.output, "artifact directory");

    auto* certify = app.add_subcommand("certify", "Run the release criteria");
    std::string suite = "core";
    certify->add_option("--suite", suite, "criteria suite")
        ->check(CLI::IsMember({"core"}));
    certify->add_option("--jobs", f.jobs, "shard count");
    certify->add_option("--output", f.output, "directory for scratch artifacts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (generate->parsed()) return run_generate(f, kind);
        if (census->parsed()) return run_census(f);
        if (phi->parsed()) return run_phi(f, samples);
        if (bounds->parsed()) return run_bounds(f, residual_log, exact);
        if (structure->parsed()) return run_structure(f, mode);
        if (sample->parsed())
            return run_sample(f, restricted_steps, record_every, max_steps);
        if (enumerate->parsed())
            return run_enumerate(f, c_opt->count() > 0, k_opt->count() > 0);
        if (certify->parsed()) return run_certify(f);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 2;
}
