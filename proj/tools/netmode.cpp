// Command-line front end: generate, analyze, rewire, verify, sweep.
//
// Exit codes: 0 success, 1 usage error, 2 input/parse/config error,
// 3 verification or post-condition failure.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "netmode/classification.hpp"
#include "netmode/errors.hpp"
#include "netmode/generation.hpp"
#include "netmode/graph.hpp"
#include "netmode/matching.hpp"
#include "netmode/oracle.hpp"
#include "netmode/rewiring.hpp"
#include "netmode/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitVerify = 3;

netmode::DirectedGraph load_graph(const std::string& path, bool dedup = false) {
    std::ifstream in(path);
    if (!in) throw netmode::IoError("cannot open graph file: " + path);
    return netmode::parse_edge_list(in, {.dedup = dedup});
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw netmode::IoError("cannot open output file: " + path);
    out << content;
    if (!out) throw netmode::IoError("write failed: " + path);
}

int run_generate(const std::string& model, std::int64_t nodes, double k, double gamma,
                 std::uint64_t seed, const std::string& out_path) {
    netmode::GeneratorConfig config;
    config.n = nodes;
    config.k = k;
    config.gamma_in = gamma;
    config.gamma_out = gamma;
    config.seed = seed;
    if (model == "sf")
        config.model = netmode::GraphModel::StaticScaleFree;
    else if (model == "er")
        config.model = netmode::GraphModel::UniformRandom;
    else
        throw netmode::ConfigInvalid("unknown model '" + model + "' (expected sf or er)");

    const netmode::DirectedGraph graph = netmode::generate_digraph(config);
    write_file(out_path, netmode::serialize_edge_list(graph));
    write_file(out_path + ".json", netmode::config_json(config) + "\n");
    return kExitOk;
}

int run_analyze(const std::string& graph_path, bool with_labels,
                const std::string& json_path, double mode_threshold) {
    const netmode::DirectedGraph graph = load_graph(graph_path);
    const netmode::Matching m = netmode::maximum_matching(graph);
    const netmode::ControlReport report = netmode::control_report(graph, m, mode_threshold);

    std::string json;
    if (with_labels) {
        const netmode::ControlClassification cls = netmode::classify_nodes(graph, m);
        json = netmode::report_json(report, cls, &graph);
    } else {
        json = netmode::report_json(report);
    }
    json += "\n";

    if (json_path.empty())
        std::cout << json;
    else
        write_file(json_path, json);
    return kExitOk;
}

int run_rewire(const std::string& graph_path, const std::string& out_graph_path,
               const std::string& json_path, bool dry_run, double mode_threshold) {
    netmode::DirectedGraph graph = load_graph(graph_path);
    netmode::AlterOptions options;
    options.mode_threshold = mode_threshold;
    const netmode::RewireOutcome outcome = netmode::alter_to_centralized(graph, options);
    const std::string json = netmode::outcome_json(outcome) + "\n";

    if (json_path.empty() || dry_run)
        std::cout << json;
    if (!dry_run) {
        if (!json_path.empty()) write_file(json_path, json);
        if (!out_graph_path.empty())
            write_file(out_graph_path, netmode::serialize_edge_list(graph));
    }
    return kExitOk;
}

int run_verify(const std::string& graph_path, std::int64_t budget_steps) {
    const netmode::DirectedGraph graph = load_graph(graph_path);

    netmode::OracleBudget budget;
    budget.max_steps = budget_steps;
    const netmode::OracleClassification truth = netmode::oracle_classification(graph, budget);

    const netmode::Matching m = netmode::maximum_matching(graph);
    if (m.size() != truth.max_size) {
        std::cout << "oracle agreement: FAILED (matching size " << m.size() << " vs "
                  << truth.max_size << ")\n";
        return kExitVerify;
    }
    const netmode::MatchingDiagnostics diag = netmode::verify_maximum_matching(graph, m);
    if (!diag.valid_maximum()) {
        std::cout << "oracle agreement: FAILED (matching not valid/maximum: " << diag.detail
                  << ")\n";
        return kExitVerify;
    }
    const netmode::ControlClassification cls = netmode::classify_nodes(graph, m);
    std::vector<netmode::NodeId> input;
    for (netmode::NodeId v = 0; v < graph.node_count(); ++v)
        if (cls.is_input(v)) input.push_back(v);
    if (input != truth.input) {
        std::cout << "oracle agreement: FAILED (input-node sets differ)\n";
        return kExitVerify;
    }
    std::cout << "oracle agreement: OK (n=" << graph.node_count() << ", max matching "
              << truth.max_size << ", input nodes " << input.size() << ")\n";
    return kExitOk;
}

int run_sweep(const netmode::SweepConfig& config, const std::string& csv_path) {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw netmode::IoError("cannot open CSV output: " + csv_path);
    netmode::run_experiment_sweep(config, out);
    if (!out) throw netmode::IoError("write failed: " + csv_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structural-controllability analysis and control-mode rewiring"};
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "Generate a random digraph edge list");
    std::string gen_model = "sf";
    std::int64_t gen_nodes = 0;
    double gen_k = 0.0;
    double gen_gamma = 3.0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    generate->add_option("--model", gen_model, "Model: sf (static scale-free) or er (uniform)");
    generate->add_option("--nodes", gen_nodes, "Node count")->required();
    generate->add_option("--k", gen_k, "Target average total degree 2L/N")->required();
    generate->add_option("--gamma", gen_gamma, "Power-law exponent (sf only)");
    generate->add_option("--seed", gen_seed, "RNG seed");
    generate->add_option("--out", gen_out, "Output edge-list path")->required();

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Classify nodes and report control mode");
    std::string an_graph;
    bool an_labels = false;
    std::string an_json;
    double an_threshold = 0.5;
    analyze->add_option("--graph", an_graph, "Input edge-list path")->required();
    analyze->add_flag("--labels", an_labels, "Include per-node labels in the report");
    analyze->add_option("--json", an_json, "Write the report to this file instead of stdout");
    analyze->add_option("--mode-threshold", an_threshold, "Input fraction dividing modes");

    // rewire
    auto* rewire = app.add_subcommand("rewire", "Flip the network to centralized control");
    std::string rw_graph, rw_out_graph, rw_json;
    bool rw_dry_run = false;
    double rw_threshold = 0.5;
    rewire->add_option("--graph", rw_graph, "Input edge-list path")->required();
    rewire->add_option("--out-graph", rw_out_graph, "Write the rewired edge list here");
    rewire->add_option("--json", rw_json, "Write the outcome to this file instead of stdout");
    rewire->add_flag("--dry-run", rw_dry_run, "Compute and print, write no files");
    rewire->add_option("--mode-threshold", rw_threshold, "Input fraction dividing modes");

    // verify
    auto* verify = app.add_subcommand("verify", "Check against exhaustive enumeration");
    std::string vf_graph;
    std::int64_t vf_budget = 100'000'000;
    verify->add_option("--graph", vf_graph, "Input edge-list path (small)")->required();
    verify->add_option("--budget", vf_budget, "Enumeration step budget");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Degree-axis experiment, CSV output");
    netmode::SweepConfig sweep_config;
    std::string sw_model = "sf";
    std::string sw_csv;
    sweep->add_option("--nodes", sweep_config.nodes, "Nodes per instance")->required();
    sweep->add_option("--k-min", sweep_config.k_min, "Smallest k")->required();
    sweep->add_option("--k-max", sweep_config.k_max, "Largest k")->required();
    sweep->add_option("--k-step", sweep_config.k_step, "k increment");
    sweep->add_option("--instances", sweep_config.instances_per_k, "Instances per k");
    sweep->add_option("--seed", sweep_config.base_seed, "Base seed");
    sweep->add_option("--gamma", sweep_config.gamma, "Power-law exponent (sf only)");
    sweep->add_option("--model", sw_model, "Model: sf or er");
    sweep->add_flag("--filter-input-largest", sweep_config.filter_input_largest,
                    "Keep only instances whose largest component is an input component");
    sweep->add_option("--mode-threshold", sweep_config.mode_threshold,
                      "Input fraction dividing modes");
    sweep->add_option("--csv", sw_csv, "Output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (generate->parsed())
            return run_generate(gen_model, gen_nodes, gen_k, gen_gamma, gen_seed, gen_out);
        if (analyze->parsed())
            return run_analyze(an_graph, an_labels, an_json, an_threshold);
        if (rewire->parsed())
            return run_rewire(rw_graph, rw_out_graph, rw_json, rw_dry_run, rw_threshold);
        if (verify->parsed()) return run_verify(vf_graph, vf_budget);
        if (sweep->parsed()) {
            if (sw_model == "sf")
                sweep_config.model = netmode::GraphModel::StaticScaleFree;
            else if (sw_model == "er")
                sweep_config.model = netmode::GraphModel::UniformRandom;
            else
                throw netmode::ConfigInvalid("unknown model '" + sw_model + "'");
            return run_sweep(sweep_config, sw_csv);
        }
    } catch (const netmode::PostConditionViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerify;
    } catch (const netmode::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitUsage;
}
