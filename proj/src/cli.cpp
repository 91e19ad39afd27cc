#include "gammachain/cli.hpp"

#include "gammachain/inference.hpp"
#include "gammachain/io.hpp"
#include "gammachain/markov_models.hpp"
#include "gammachain/simulation.hpp"
#include "gammachain/stationary.hpp"

#include <cstdio>
#include <cstdlib>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#ifndef GAMMACHAIN_DATA_DIR
#define GAMMACHAIN_DATA_DIR "data"
#endif

namespace gammachain::cli {

namespace fs = std::filesystem;
using io::json;

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

const char *kind_name(ModelKind kind) { return kind == ModelKind::Kernel ? "kernel" : "midpoint"; }

StrategyPartition load_partition(const RunConfig &config) {
    if (config.partition_path)
        return io::partition_from_json(io::read_json_file(*config.partition_path));
    return default_partition();
}

RegionConfig load_region_config(const RunConfig &config) {
    RegionConfig regions = config.region_config_path
                               ? io::region_config_from_json(io::read_json_file(*config.region_config_path))
                               : default_region_config();
    if (config.node_count && *config.node_count != regions.total_nodes())
        regions = regions.with_node_count(*config.node_count);
    return regions;
}

void print_matrix(std::ostream &out, const Eigen::MatrixXd &m, const std::vector<std::string> &labels) {
    out << std::setw(6) << "";
    for (const auto &l : labels)
        out << std::setw(8) << l;
    out << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out << std::setw(6) << labels[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out << std::setw(8) << std::fixed << std::setprecision(2) << m(i, j);
        out << '\n';
    }
    out.unsetf(std::ios::floatfield);
}

void print_distribution(std::ostream &out, const std::string &name, const Eigen::VectorXd &v) {
    out << std::setw(6) << name;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out << std::setw(8) << std::fixed << std::setprecision(2) << v(i);
    out << '\n';
    out.unsetf(std::ios::floatfield);
}

std::string distribution_csv(const StateDistribution &pi, const std::vector<std::string> &labels) {
    std::ostringstream ss;
    io::write_matrix_csv(ss, pi.weights().transpose(), labels);
    return ss.str();
}

std::string fnv1a_hex(const std::string &text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

TransitionMatrix build_model(ModelKind kind, const StrategyPartition &partition, double length_scale) {
    if (kind == ModelKind::Kernel)
        return model2_transition_matrix(partition, KernelConfig{length_scale});
    return model1_transition_matrix(partition);
}

// ---------------------------------------------------------------------------

int cmd_model(const RunConfig &config, std::ostream &out) {
    if (config.kind == ModelKind::Kernel)
        validate(KernelConfig{config.length_scale});
    const StrategyPartition partition = load_partition(config);
    const auto labels = partition.labels();
    const TransitionMatrix p = build_model(config.kind, partition, config.length_scale);
    const StateDistribution pi = stationary_distribution(p);

    const std::string stem = std::string("model_") + kind_name(config.kind);
    json doc = {{"kind", kind_name(config.kind)},
                {"partition", io::to_json(partition)},
                {"transition_matrix", io::to_json(p, labels)},
                {"stationary", io::to_json(pi, labels)}};
    if (config.kind == ModelKind::Kernel)
        doc["length_scale"] = config.length_scale;
    io::write_json_file(config.out_dir / (stem + ".json"), doc);
    std::ostringstream matrix_csv;
    io::write_matrix_csv(matrix_csv, p.matrix(), labels);
    io::write_text_file(config.out_dir / (stem + "_matrix.csv"), matrix_csv.str());
    io::write_text_file(config.out_dir / (stem + "_stationary.csv"), distribution_csv(pi, labels));

    out << kind_name(config.kind) << " model transition matrix\n";
    print_matrix(out, p.matrix(), labels);
    out << "stationary distribution\n";
    print_distribution(out, "pi", pi.weights());
    return kOk;
}

struct SimulationResult {
    GammaSeries series;
    GammaSeries average;
};

SimulationResult simulate_into(const RunConfig &config, std::uint64_t seed, int steps,
                               const fs::path &dir) {
    const RegionConfig regions = load_region_config(config);
    SimulationResult result;
    result.series = simulate_gamma_series(uniform_schedule(static_cast<std::size_t>(steps)), seed,
                                          regions, {config.dropout, config.activation});
    result.average = moving_average(result.series);

    std::ostringstream csv;
    io::write_series_csv(csv, result.series);
    io::write_text_file(dir / "gamma_series.csv", csv.str());
    io::write_json_file(dir / "gamma_series.json", io::to_json(result.series));

    std::ostringstream avg;
    io::write_series_csv(avg, result.average);
    io::write_text_file(dir / "moving_average.csv", avg.str());

    std::ostringstream plot;
    plot << "time,gamma,moving_average\n" << std::setprecision(io::kOutputDigits);
    for (std::size_t i = 0; i < result.series.size(); ++i)
        plot << result.series.times[i] << ',' << result.series.values[i] << ','
             << result.average.values[i] << '\n';
    io::write_text_file(dir / "plot_data.csv", plot.str());

    const json run_config = {{"steps", steps},
                             {"node_count", regions.total_nodes()},
                             {"dropout", config.dropout},
                             {"activation", config.activation},
                             {"hashrate", config.hashrate_label},
                             {"regions", io::to_json(regions)}};
    io::write_json_file(dir / "run_metadata.json",
                        {{"seed", seed}, {"config", run_config}, {"config_hash", fnv1a_hex(run_config.dump())}});
    return result;
}

int cmd_simulate(const RunConfig &config, std::ostream &out) {
    const int steps = config.steps.value_or(kDefaultSimulateSteps);
    if (steps < 1)
        throw UsageError("--steps must be at least 1");
    const SimulationResult r = simulate_into(config, config.seed, steps, config.out_dir);
    out << "simulated " << r.series.size() << " samples (seed " << config.seed << "), final moving average "
        << std::setprecision(4) << r.average.values.back() << '\n';
    return kOk;
}

struct AnalysisResult {
    TransitionCounts counts;
    TransitionMatrix empirical;
    std::optional<StateDistribution> stationary;
    StateDistribution occupancy;
};

AnalysisResult analyze_into(const GammaSeries &series, const StrategyPartition &partition,
                            const fs::path &dir) {
    TransitionCounts counts = count_transitions(series, partition);
    TransitionMatrix empirical = empirical_transition_matrix(counts);
    std::optional<StateDistribution> stationary;
    if (is_irreducible(empirical))
        stationary = stationary_distribution(empirical);
    StateDistribution occupancy = occupancy_fractions(series, partition);

    const auto labels = partition.labels();
    std::ostringstream counts_csv;
    io::write_counts_csv(counts_csv, counts.counts);
    io::write_text_file(dir / "counts.csv", counts_csv.str());
    io::write_json_file(dir / "counts.json", io::to_json(counts));
    io::write_json_file(dir / "empirical_matrix.json", io::to_json(empirical, labels));
    std::ostringstream matrix_csv;
    io::write_matrix_csv(matrix_csv, empirical.matrix(), labels);
    io::write_text_file(dir / "empirical_matrix.csv", matrix_csv.str());
    json stat = {{"irreducible", stationary.has_value()}};
    stat["distribution"] = stationary ? io::to_json(*stationary, labels) : json(nullptr);
    io::write_json_file(dir / "empirical_stationary.json", stat);
    io::write_json_file(dir / "occupancy.json", io::to_json(occupancy, labels));
    return {std::move(counts), std::move(empirical), std::move(stationary), std::move(occupancy)};
}

GammaSeries load_series(const fs::path &path) {
    if (path.extension() == ".json")
        return io::series_from_json(io::read_json_file(path));
    std::istringstream in(io::read_text_file(path));
    return io::read_series_csv(in);
}

void print_analysis(std::ostream &out, const AnalysisResult &a, const std::vector<std::string> &labels) {
    out << "transition counts (total " << a.counts.total() << ")\n";
    for (Eigen::Index i = 0; i < a.counts.counts.rows(); ++i) {
        out << std::setw(6) << labels[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < a.counts.counts.cols(); ++j)
            out << std::setw(8) << a.counts.counts(i, j);
        out << '\n';
    }
    out << "empirical transition matrix\n";
    print_matrix(out, a.empirical.matrix(), labels);
    if (a.stationary)
        print_distribution(out, "pi", a.stationary->weights());
    else
        out << "empirical chain is not irreducible; no stationary distribution\n";
    print_distribution(out, "occ", a.occupancy.weights());
}

int cmd_analyze(const RunConfig &config, std::ostream &out) {
    if (!config.series_path)
        throw UsageError("analyze needs --series <csv|json>");
    const GammaSeries series = load_series(*config.series_path);
    if (series.size() < 2)
        throw std::runtime_error("series " + config.series_path->string() + " has fewer than 2 samples");
    const StrategyPartition partition = load_partition(config);
    const AnalysisResult a = analyze_into(series, partition, config.out_dir);
    print_analysis(out, a, partition.labels());
    return kOk;
}

struct ComparisonResult {
    LikelihoodReport model1;
    LikelihoodReport model2;
    std::string verdict;
};

ComparisonResult compare_into(const TransitionCounts &counts, double length_scale, const fs::path &dir) {
    const TransitionMatrix p1 = model1_transition_matrix(counts.partition);
    const TransitionMatrix p2 = model2_transition_matrix(counts.partition, KernelConfig{length_scale});
    ComparisonResult r{score_model("midpoint", p1, counts), score_model("kernel", p2, counts), "tie"};
    if (r.model1.relative_likelihood < r.model2.relative_likelihood)
        r.verdict = "model1";
    else if (r.model2.relative_likelihood < r.model1.relative_likelihood)
        r.verdict = "model2";
    io::write_json_file(dir / "likelihood_report.json",
                        {{"counts", io::to_json(counts)},
                         {"length_scale", length_scale},
                         {"models", {io::to_json(r.model1), io::to_json(r.model2)}},
                         {"verdict", r.verdict}});
    return r;
}

void print_comparison(std::ostream &out, const ComparisonResult &r) {
    out << "relative likelihood  midpoint (model1): " << std::setprecision(6) << r.model1.relative_likelihood
        << "\nrelative likelihood  kernel   (model2): " << r.model2.relative_likelihood << '\n';
    if (r.verdict == "tie")
        out << "verdict: tie\n";
    else
        out << "verdict: " << r.verdict << " preferred\n";
}

int cmd_compare(const RunConfig &config, std::ostream &out) {
    validate(KernelConfig{config.length_scale});
    const fs::path counts_path = config.counts_path.value_or(data_dir() / "paper_counts.csv");
    std::istringstream in(io::read_text_file(counts_path));
    CountMatrix m = io::read_counts_csv(in);
    const TransitionCounts counts = make_counts(std::move(m), load_partition(config));
    print_comparison(out, compare_into(counts, config.length_scale, config.out_dir));
    return kOk;
}

struct PipelineResult {
    std::uint64_t seed;
    AnalysisResult analysis;
    ComparisonResult comparison;
};

int cmd_pipeline(const RunConfig &config, std::ostream &out) {
    const int steps = config.steps.value_or(kDefaultPipelineSteps);
    if (steps < 2)
        throw UsageError("pipeline needs --steps >= 2");
    if (config.replicates < 1)
        throw UsageError("--replicates must be at least 1");
    validate(KernelConfig{config.length_scale});
    const StrategyPartition partition = load_partition(config);
    load_region_config(config); // fail fast before spawning runs

    auto run_one = [&](std::uint64_t seed) {
        const fs::path dir =
            config.replicates == 1 ? config.out_dir : config.out_dir / ("seed_" + std::to_string(seed));
        const SimulationResult sim = simulate_into(config, seed, steps, dir);
        AnalysisResult analysis = analyze_into(sim.series, partition, dir);
        ComparisonResult comparison = compare_into(analysis.counts, config.length_scale, dir);
        return PipelineResult{seed, std::move(analysis), std::move(comparison)};
    };

    // independent seeds run concurrently; results are gathered in seed order
    std::vector<std::future<PipelineResult>> pending;
    for (int r = 0; r < config.replicates; ++r)
        pending.push_back(std::async(std::launch::async, run_one, config.seed + static_cast<std::uint64_t>(r)));
    std::vector<PipelineResult> results;
    for (auto &f : pending)
        results.push_back(f.get());

    const auto labels = partition.labels();
    const TransitionMatrix p1 = model1_transition_matrix(partition);
    const TransitionMatrix p2 = model2_transition_matrix(partition, KernelConfig{config.length_scale});
    std::optional<StateDistribution> pi1, pi2;
    if (is_irreducible(p1))
        pi1 = stationary_distribution(p1);
    if (is_irreducible(p2))
        pi2 = stationary_distribution(p2);

    auto dist_json = [&](const std::optional<StateDistribution> &d) {
        return d ? io::to_json(*d, labels) : json(nullptr);
    };
    json runs = json::array();
    for (const auto &r : results)
        runs.push_back({{"seed", r.seed},
                        {"pi_empirical", dist_json(r.analysis.stationary)},
                        {"occupancy", io::to_json(r.analysis.occupancy, labels)},
                        {"relative_likelihood",
                         {{"model1", io::extended_real(r.comparison.model1.relative_likelihood)},
                          {"model2", io::extended_real(r.comparison.model2.relative_likelihood)}}},
                        {"verdict", r.comparison.verdict}});
    io::write_json_file(config.out_dir / "summary.json",
                        {{"steps", steps},
                         {"labels", labels},
                         {"pi_model1", dist_json(pi1)},
                         {"pi_model2", dist_json(pi2)},
                         {"runs", runs}});

    for (const auto &r : results) {
        out << "seed " << r.seed << '\n';
        print_analysis(out, r.analysis, labels);
        print_comparison(out, r.comparison);
    }
    out << "stationary distributions\n" << std::setw(6) << "";
    for (const auto &l : labels)
        out << std::setw(8) << l;
    out << '\n';
    if (pi1)
        print_distribution(out, "pi1", pi1->weights());
    if (pi2)
        print_distribution(out, "pi2", pi2->weights());
    for (const auto &r : results)
        if (r.analysis.stationary)
            print_distribution(out, "pi3", r.analysis.stationary->weights());
    return kOk;
}

} // namespace

fs::path data_dir() {
    if (const char *env = std::getenv("GAMMACHAIN_DATA_DIR"); env && *env)
        return env;
    return GAMMACHAIN_DATA_DIR;
}

std::optional<Command> parse_command(const std::string &name) {
    if (name == "model")
        return Command::Model;
    if (name == "simulate")
        return Command::Simulate;
    if (name == "analyze")
        return Command::Analyze;
    if (name == "compare")
        return Command::Compare;
    if (name == "pipeline")
        return Command::Pipeline;
    return std::nullopt;
}

std::optional<ModelKind> parse_model_kind(const std::string &name) {
    if (name == "midpoint")
        return ModelKind::Midpoint;
    if (name == "kernel")
        return ModelKind::Kernel;
    return std::nullopt;
}

int run(Command command, const RunConfig &config, std::ostream &out, std::ostream &err) {
    try {
        fs::create_directories(config.out_dir);
        switch (command) {
        case Command::Model:
            return cmd_model(config, out);
        case Command::Simulate:
            return cmd_simulate(config, out);
        case Command::Analyze:
            return cmd_analyze(config, out);
        case Command::Compare:
            return cmd_compare(config, out);
        case Command::Pipeline:
            return cmd_pipeline(config, out);
        }
    } catch (const StationaryError &e) {
        err << "error: " << e.what() << '\n';
        return kSolver;
    } catch (const std::invalid_argument &e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kFailure;
}

} // namespace gammachain::cli
