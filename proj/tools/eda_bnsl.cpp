// eda-bnsl: command line front end for the EDA structure-learning library.
//
//   eda-bnsl run     execute an experiment grid and write CSV reports
//   eda-bnsl sample  draw a dataset from a network and write it as CSV
//   eda-bnsl score   BDe-score a network's structure against a dataset
//
// Exit codes: 0 success, 2 usage error, 1 runtime failure.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "edabn/asia.hpp"
#include "edabn/dataset_io.hpp"
#include "edabn/harness.hpp"
#include "edabn/network_io.hpp"
#include "edabn/scoring.hpp"

namespace {

edabn::Algorithm parse_algorithm(const std::string& name) {
    if (name == "umda" || name == "univariate") return edabn::Algorithm::univariate;
    if (name == "pbil") return edabn::Algorithm::pbil;
    if (name == "mimic") return edabn::Algorithm::mimic;
    throw edabn::ConfigError("unknown algorithm '" + name + "' (umda, pbil, mimic)");
}

edabn::MutationKind parse_mutation(const std::string& name) {
    if (name == "none") return edabn::MutationKind::none;
    if (name == "bitwise") return edabn::MutationKind::bitwise;
    if (name == "transpose") return edabn::MutationKind::transpose;
    throw edabn::ConfigError("unknown mutation '" + name + "' (none, bitwise, transpose)");
}

struct RunArgs {
    std::string network;
    bool asia = false;
    std::string profile = "desk";
    std::vector<std::string> algos;
    std::vector<std::string> mutations;
    std::vector<double> rates;
    std::vector<int> pop_sizes;
    std::vector<double> pbil_rates;
    int generations = 0;
    int repeats = 0;
    int data_size = 0;
    double ess = 0.0;
    int elitism = 0;
    double selection_frac = 0.0;
    std::uint64_t seed = 0;
    int workers = 0;
    std::string out_dir = "out";
    bool no_timestamp = false;
};

int cmd_run(const RunArgs& args, const CLI::App& cmd) {
    edabn::ExperimentGrid grid = args.profile == "paper" ? edabn::ExperimentGrid::paper_profile()
                                                         : edabn::ExperimentGrid::desk_profile();
    grid.network_path = args.network;
    if (cmd.count("--algos")) {
        grid.algorithms.clear();
        for (const auto& name : args.algos) grid.algorithms.push_back(parse_algorithm(name));
    }
    if (cmd.count("--mutations")) {
        grid.mutations.clear();
        for (const auto& name : args.mutations) grid.mutations.push_back(parse_mutation(name));
    }
    if (cmd.count("--rates")) grid.rates = args.rates;
    if (cmd.count("--pop-sizes")) grid.population_sizes = args.pop_sizes;
    if (cmd.count("--pbil-rates")) grid.pbil_rates = args.pbil_rates;
    if (cmd.count("--generations")) grid.generations = args.generations;
    if (cmd.count("--repeats")) grid.repeats = args.repeats;
    if (cmd.count("--data-size")) grid.data_size = args.data_size;
    if (cmd.count("--ess")) grid.ess = args.ess;
    if (cmd.count("--elitism")) grid.elitism = args.elitism;
    if (cmd.count("--selection-frac")) grid.selection_frac = args.selection_frac;
    if (cmd.count("--seed")) grid.master_seed = args.seed;
    if (cmd.count("--workers")) grid.workers = args.workers;
    grid.timestamp = !args.no_timestamp;
    grid.validate();

    const edabn::GridResult result = edabn::run_grid(grid);
    edabn::write_reports(result, args.out_dir, grid.timestamp);

    int failures = 0;
    for (const auto& run : result.runs)
        if (!run.ok) ++failures;
    std::cout << "cells: " << result.rows.size() << "  runs: " << result.runs.size()
              << "  failures: " << failures << "  reports: " << args.out_dir << "\n";
    return failures == 0 ? 0 : 1;
}

int cmd_sample(const std::string& network, int count, std::uint64_t seed, const std::string& out) {
    const edabn::BayesNetwork net =
        network.empty() ? edabn::asia_fixture() : edabn::load_network(network);
    const edabn::Dataset data = edabn::forward_sample(net, count, seed);
    edabn::write_dataset_csv(data, net.names(), out);
    std::cout << "wrote " << count << " rows to " << out << "\n";
    return 0;
}

int cmd_score(const std::string& network, const std::string& data_path, double ess) {
    const edabn::BayesNetwork net =
        network.empty() ? edabn::asia_fixture() : edabn::load_network(network);
    const edabn::Dataset data = edabn::read_dataset_csv(data_path, net);
    const double score = edabn::bde_score(data, net.structure(), ess);
    std::printf("%.17g\n", score);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structure learning of Bayesian networks with estimation-of-distribution "
                 "algorithms over adjacency-matrix genomes"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "Read defaults from an INI file (keys under [run]; flags take precedence)");

    RunArgs run_args;
    auto* run_cmd = app.add_subcommand("run", "Execute an experiment grid and write CSV reports");
    run_cmd->fallthrough(true);
    auto* network_opt = run_cmd->add_option("--network", run_args.network,
                                            "Truth network file (default: bundled Asia network)");
    run_cmd->add_flag("--asia", run_args.asia, "Use the bundled Asia network (the default)")
        ->excludes(network_opt);
    run_cmd->add_option("--profile", run_args.profile, "Grid preset: desk or paper")
        ->check(CLI::IsMember({"desk", "paper"}));
    run_cmd->add_option("--algos", run_args.algos, "Algorithms: umda, pbil, mimic")->delimiter(',');
    run_cmd->add_option("--mutations", run_args.mutations, "Mutations: none, bitwise, transpose")
        ->delimiter(',');
    run_cmd->add_option("--rates", run_args.rates, "Mutation rates")->delimiter(',');
    run_cmd->add_option("--pop-sizes", run_args.pop_sizes, "Population sizes")->delimiter(',');
    run_cmd->add_option("--pbil-rates", run_args.pbil_rates, "PBIL learning rates")->delimiter(',');
    run_cmd->add_option("--generations", run_args.generations, "Generations per run");
    run_cmd->add_option("--repeats", run_args.repeats, "Seeded repeats per grid cell");
    run_cmd->add_option("--data-size", run_args.data_size, "Training dataset size");
    run_cmd->add_option("--ess", run_args.ess, "Equivalent sample size of the BDe score");
    run_cmd->add_option("--elitism", run_args.elitism, "Elite individuals kept per generation");
    run_cmd->add_option("--selection-frac", run_args.selection_frac,
                        "Selected fraction of the population");
    run_cmd->add_option("--seed", run_args.seed, "Master seed");
    run_cmd->add_option("--workers", run_args.workers, "Worker threads (0 = hardware)");
    run_cmd->add_option("--out", run_args.out_dir, "Report directory")->capture_default_str();
    run_cmd->add_flag("--no-timestamp", run_args.no_timestamp,
                      "Omit the generation-time comment for byte-stable reports");

    std::string sample_network, sample_out = "dataset.csv";
    int sample_count = 1000;
    std::uint64_t sample_seed = 1;
    auto* sample_cmd = app.add_subcommand("sample", "Draw a dataset from a network");
    sample_cmd->add_option("--network", sample_network,
                           "Network file (default: bundled Asia network)");
    sample_cmd->add_option("--count", sample_count, "Number of rows")->capture_default_str();
    sample_cmd->add_option("--seed", sample_seed, "Sampling seed")->capture_default_str();
    sample_cmd->add_option("--out", sample_out, "Output CSV file")->capture_default_str();

    std::string score_network, score_data;
    double score_ess = 1.0;
    auto* score_cmd = app.add_subcommand("score", "BDe-score a network against a dataset");
    score_cmd->add_option("--network", score_network,
                          "Network file (default: bundled Asia network)");
    score_cmd->add_option("--data", score_data, "Dataset CSV file")->required();
    score_cmd->add_option("--ess", score_ess, "Equivalent sample size")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(run_args, *run_cmd);
        if (sample_cmd->parsed()) return cmd_sample(sample_network, sample_count, sample_seed, sample_out);
        if (score_cmd->parsed()) return cmd_score(score_network, score_data, score_ess);
    } catch (const edabn::ConfigError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
