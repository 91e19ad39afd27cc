#pragma once

#include "gammachain/network.hpp"

#include <cstdint>
#include <vector>

namespace gammachain {

/// Sampled gamma values with their sample times and the seed that made them.
struct GammaSeries {
    std::vector<double> times;
    std::vector<double> values;
    std::uint64_t seed = 0;

    std::size_t size() const { return values.size(); }
    bool operator==(const GammaSeries &) const = default;
};

struct SimulationParams {
    double dropout = 0.1;
    double activation = 0.9;
};

/// {0, 1, ..., count - 1}.
std::vector<double> uniform_schedule(std::size_t count);

/**
 * Races block propagation between two random nodes at every sample time.
 *
 * One Rng(seed) drives the whole run: the initial network draws, then for
 * each step the evolution draws (steps after the first) followed by the
 * attacker/honest pair. The pair is uniform over all nodes with the honest
 * node redrawn until it differs from the attacker.
 */
GammaSeries simulate_gamma_series(const std::vector<double> &schedule, std::uint64_t seed,
                                  const RegionConfig &config,
                                  const SimulationParams &params = {});

/// Cumulative mean: value n is the mean of values 0..n.
GammaSeries moving_average(const GammaSeries &series);

} // namespace gammachain
