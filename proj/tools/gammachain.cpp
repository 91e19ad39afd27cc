// Command-line front end: model, simulate, analyze, compare, pipeline.

#include "gammachain/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <map>

using namespace gammachain::cli;

namespace {

void add_common(CLI::App *cmd, RunConfig &config, std::string &out_dir) {
    cmd->add_option("--out", out_dir, "output directory (default: $GAMMACHAIN_OUT_DIR or .)");
    cmd->add_option("--partition", config.partition_path, "strategy partition JSON");
}

void add_simulation(CLI::App *cmd, RunConfig &config) {
    cmd->add_option("--seed", config.seed, "RNG seed");
    cmd->add_option("--steps", config.steps, "number of samples T");
    cmd->add_option("--nodes", config.node_count, "total node count V");
    cmd->add_option("--dropout", config.dropout, "initial probability that a link is inactive");
    cmd->add_option("--activation", config.activation, "per-step probability that a link is active");
    cmd->add_option("--region-config", config.region_config_path, "region config JSON");
    cmd->add_option("--hashrate", config.hashrate_label, "attacker hashrate label (metadata only)");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Markov models and network simulation for the fork-following fraction gamma"};
    app.require_subcommand(1);

    RunConfig config;
    std::string out_dir;
    std::string kind = "midpoint";

    auto *model = app.add_subcommand("model", "build a model transition matrix and its stationary distribution");
    add_common(model, config, out_dir);
    model->add_option("--kind", kind, "midpoint | kernel")->check(CLI::IsMember({"midpoint", "kernel"}));
    model->add_option("--length-scale", config.length_scale, "kernel length scale");

    auto *simulate = app.add_subcommand("simulate", "simulate a gamma time series");
    add_common(simulate, config, out_dir);
    add_simulation(simulate, config);

    auto *analyze = app.add_subcommand("analyze", "count transitions in a gamma series");
    add_common(analyze, config, out_dir);
    analyze->add_option("--series", config.series_path, "series CSV (time,gamma) or JSON")->required();

    auto *compare = app.add_subcommand("compare", "score both models against transition counts");
    add_common(compare, config, out_dir);
    compare->add_option("--counts", config.counts_path, "counts CSV (default: shipped reference counts)");
    compare->add_option("--length-scale", config.length_scale, "kernel length scale");

    auto *pipeline = app.add_subcommand("pipeline", "simulate, analyze and compare in one run");
    add_common(pipeline, config, out_dir);
    add_simulation(pipeline, config);
    pipeline->add_option("--length-scale", config.length_scale, "kernel length scale");
    pipeline->add_option("--replicates", config.replicates, "independent runs with consecutive seeds");

    CLI11_PARSE(app, argc, argv);

    if (!out_dir.empty())
        config.out_dir = out_dir;
    else if (const char *env = std::getenv(kOutDirEnv); env && *env)
        config.out_dir = env;
    config.kind = *parse_model_kind(kind);

    const auto *sub = app.get_subcommands().front();
    const auto command = parse_command(sub->get_name());
    return run(*command, config, std::cout, std::cerr);
}
