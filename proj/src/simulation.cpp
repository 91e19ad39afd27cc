#include "gammachain/simulation.hpp"

#include <stdexcept>
#include <tuple>

namespace gammachain {

std::vector<double> uniform_schedule(std::size_t count) {
    std::vector<double> times(count);
    for (std::size_t i = 0; i < count; ++i)
        times[i] = static_cast<double>(i);
    return times;
}

namespace {

std::pair<int, int> draw_pair(Rng &rng, int node_count) {
    const auto n = static_cast<std::uint64_t>(node_count);
    const int attacker = static_cast<int>(rng.index(n));
    int honest = static_cast<int>(rng.index(n));
    while (honest == attacker)
        honest = static_cast<int>(rng.index(n));
    return {attacker, honest};
}

} // namespace

GammaSeries simulate_gamma_series(const std::vector<double> &schedule, std::uint64_t seed,
                                  const RegionConfig &config, const SimulationParams &params) {
    if (schedule.empty())
        throw std::invalid_argument("schedule must contain at least one time");
    for (std::size_t i = 1; i < schedule.size(); ++i)
        if (!(schedule[i] > schedule[i - 1]))
            throw std::invalid_argument("schedule must be strictly increasing");

    Rng rng(seed);
    GammaSeries series;
    series.seed = seed;
    series.times = schedule;
    series.values.reserve(schedule.size());

    NetworkState state = init_network(config, params.dropout, rng);
    auto [attacker, honest] = draw_pair(rng, state.node_count());
    series.values.push_back(gamma_of(state, attacker, honest));

    for (std::size_t n = 1; n < schedule.size(); ++n) {
        const EvolveParams step{schedule[n] - schedule[n - 1], params.activation};
        state = evolve_network(state, config, step, rng);
        std::tie(attacker, honest) = draw_pair(rng, state.node_count());
        series.values.push_back(gamma_of(state, attacker, honest));
    }
    return series;
}

GammaSeries moving_average(const GammaSeries &series) {
    if (series.values.empty())
        throw std::invalid_argument("moving average of an empty series");
    GammaSeries out = series;
    double running = 0.0;
    for (std::size_t n = 0; n < series.values.size(); ++n) {
        running += series.values[n];
        out.values[n] = running / static_cast<double>(n + 1);
    }
    return out;
}

} // namespace gammachain
