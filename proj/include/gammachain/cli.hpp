#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace gammachain::cli {

enum class Command { Model, Simulate, Analyze, Compare, Pipeline };
enum class ModelKind { Midpoint, Kernel };

inline constexpr std::uint64_t kDefaultSeed = 2022;
inline constexpr int kDefaultSimulateSteps = 1000;
inline constexpr int kDefaultPipelineSteps = 5000;
/// Environment variable consulted for the output directory when --out is absent.
inline constexpr const char *kOutDirEnv = "GAMMACHAIN_OUT_DIR";

struct RunConfig {
    std::uint64_t seed = kDefaultSeed;
    std::optional<int> steps;      // command-specific default when unset
    std::optional<int> node_count; // region config total when unset
    std::string hashrate_label = "0.2";
    ModelKind kind = ModelKind::Midpoint;
    double length_scale = 0.25;
    double dropout = 0.1;
    double activation = 0.9;
    int replicates = 1;
    std::optional<std::filesystem::path> partition_path;
    std::optional<std::filesystem::path> region_config_path;
    std::optional<std::filesystem::path> counts_path;
    std::optional<std::filesystem::path> series_path;
    std::filesystem::path out_dir = ".";
};

/// Process exit codes.
enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kSolver = 3 };

/// Runs one command, writing artifacts under config.out_dir and a human
/// readable summary to out. Errors are reported on err and mapped to an
/// exit code; nothing is thrown.
int run(Command command, const RunConfig &config, std::ostream &out, std::ostream &err);

/// Shipped fixture directory (default partition, region config, reference counts).
std::filesystem::path data_dir();

std::optional<Command> parse_command(const std::string &name);
std::optional<ModelKind> parse_model_kind(const std::string &name);

} // namespace gammachain::cli
