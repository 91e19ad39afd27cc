#pragma once

#include "gammachain/inference.hpp"
#include "gammachain/network.hpp"
#include "gammachain/partition.hpp"
#include "gammachain/simulation.hpp"
#include "gammachain/transition_matrix.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace gammachain::io {

using json = nlohmann::json;

/// Values are written with this many significant digits.
inline constexpr int kOutputDigits = 12;

/// Rounds x to kOutputDigits significant digits; infinities and NaN pass through.
double round_for_output(double x);

// JSON encoders/decoders. Infinite reals are encoded as the strings
// "Infinity" and "-Infinity".
json to_json(const StrategyPartition &partition);
StrategyPartition partition_from_json(const json &j);

json to_json(const TransitionMatrix &matrix, const std::vector<std::string> &labels);
TransitionMatrix matrix_from_json(const json &j);

json to_json(const StateDistribution &dist, const std::vector<std::string> &labels);
StateDistribution distribution_from_json(const json &j);

json to_json(const TransitionCounts &counts);
TransitionCounts counts_from_json(const json &j);

json to_json(const LikelihoodReport &report);
LikelihoodReport likelihood_report_from_json(const json &j);

json to_json(const GammaSeries &series);
GammaSeries series_from_json(const json &j);

json to_json(const RegionConfig &config);
RegionConfig region_config_from_json(const json &j);

json extended_real(double x);
double extended_real_from_json(const json &j);

// CSV.
void write_series_csv(std::ostream &out, const GammaSeries &series);
/// Parses a `time,gamma` CSV. Throws std::runtime_error on malformed input.
GammaSeries read_series_csv(std::istream &in);

/// k rows of k comma-separated integers, no header.
void write_counts_csv(std::ostream &out, const CountMatrix &counts);
CountMatrix read_counts_csv(std::istream &in);

/// Header row of labels, then one row per matrix row.
void write_matrix_csv(std::ostream &out, const Eigen::MatrixXd &matrix,
                      const std::vector<std::string> &labels);

// File helpers. Readers throw std::runtime_error naming the path on failure.
json read_json_file(const std::filesystem::path &path);
void write_json_file(const std::filesystem::path &path, const json &j);
std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, const std::string &text);

} // namespace gammachain::io
