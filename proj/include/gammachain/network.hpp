#pragma once

#include "gammachain/rng.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace gammachain {

/// Latency value marking a link that does not exist.
inline constexpr double kInactive = 1e7;
/// Finite latencies are kept within [kLatencyFloor, kLatencyCeiling].
inline constexpr double kLatencyFloor = 1.0;
inline constexpr double kLatencyCeiling = 1e6;

/// Geographic layout of the mining network: node counts per region and the
/// mean latency between every pair of regions.
struct RegionConfig {
    std::vector<std::string> region_names;
    std::vector<int> node_counts;
    Eigen::MatrixXd mean_latency;

    int total_nodes() const;
    /// Region index of every node, regions laid out contiguously in order.
    std::vector<int> region_of_nodes() const;
    /// Throws std::invalid_argument on inconsistent sizes, negative counts,
    /// asymmetric or non-positive latencies.
    void validate() const;
    /// Same regions and latencies with node counts rescaled to sum to
    /// node_count (largest-remainder rounding).
    RegionConfig with_node_count(int node_count) const;

    bool operator==(const RegionConfig &) const = default;
};

/// 100 nodes over six regions with the 2019 inter-continental mean latencies.
RegionConfig default_region_config();

/// Snapshot of the weighted latency graph. Symmetric, zero diagonal; missing
/// links hold kInactive.
struct NetworkState {
    Eigen::MatrixXd weights;
    std::vector<int> region_of;

    int node_count() const { return static_cast<int>(weights.rows()); }
    bool active(int i, int j) const { return weights(i, j) < kInactive; }
};

struct CentralityVector {
    Eigen::VectorXd scores;
};

/// Draws the initial network: each pair is inactive with probability dropout,
/// otherwise Pareto with shape 0.2*mean and scale mean - 5 for its region pair.
NetworkState init_network(const RegionConfig &config, double dropout, Rng &rng);
NetworkState init_network(const RegionConfig &config, double dropout, std::uint64_t seed);

/**
 * Power-iteration eigenvector centrality of a 0/1 adjacency matrix.
 *
 * Starts from the uniform vector, L2-normalises after every product, stops
 * when the L1 change drops below V * 1e-5 or after 50 products and returns
 * the last iterate. An all-zero product yields the L2-normalised uniform
 * vector.
 */
CentralityVector eigenvector_centrality(const Eigen::MatrixXd &adjacency);

/// Centrality of the graph whose adjacency is 1 wherever the latency is
/// finite. The zero diagonal counts as finite, so every node carries a
/// self-loop; A and A + I share eigenvectors and the loop keeps the
/// iteration from oscillating on bipartite graphs.
CentralityVector eigenvector_centrality(const NetworkState &state);

/// 0/1 adjacency (unit diagonal) implied by the finite weights of state.
Eigen::MatrixXd adjacency_of(const NetworkState &state);

/// One draw from the standard skew-normal with the given shape.
double sample_skew_normal(double shape, Rng &rng);
double sample_skew_normal(double shape, std::uint64_t seed);

struct EvolveParams {
    double delta_t = 1.0;
    double activation = 0.9;
};

/**
 * Advances the network by delta_t.
 *
 * Draw order: fresh adjacency (each pair active with probability activation)
 * in row-major pair order, then one skew-normal per pair that needs it, again
 * in row-major order. With c = centrality(i) + centrality(j) and S a
 * skew-normal draw with shape 3c:
 *   finite and active  -> prev * (1 + delta_t * S)
 *   finite, not active -> kInactive
 *   inactive           -> mean latency * (1 + delta_t * S), whatever the draw
 * Finite results are clamped to [kLatencyFloor, kLatencyCeiling].
 */
NetworkState evolve_network(const NetworkState &prev, const RegionConfig &config,
                            const EvolveParams &params, Rng &rng);
NetworkState evolve_network(const NetworkState &prev, const RegionConfig &config,
                            const EvolveParams &params, std::uint64_t seed);

/// Single-source shortest latencies over active links. Unreachable nodes
/// report kInactive.
std::vector<double> shortest_latencies(const NetworkState &state, int source);

/// Fraction of the network (divided by V) strictly closer to attacker than
/// to honest, excluding the two endpoints themselves.
double gamma_of(const NetworkState &state, int attacker, int honest);

} // namespace gammachain
