#pragma once

#include "gammachain/partition.hpp"
#include "gammachain/simulation.hpp"
#include "gammachain/transition_matrix.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>

namespace gammachain {

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Observed state-to-state transitions over a partition.
struct TransitionCounts {
    CountMatrix counts;
    StrategyPartition partition;

    std::int64_t total() const { return counts.sum(); }
};

/// Builds counts from a raw matrix, checking shape and non-negativity.
TransitionCounts make_counts(CountMatrix counts, StrategyPartition partition);

/// Frequency matrix of a 5000-sample reference run over the default partition.
TransitionCounts reference_counts();

struct LikelihoodReport {
    std::string model_name;
    double relative_likelihood = 0.0;
    double log_likelihood = 0.0;
};

std::size_t bin_gamma(double value, const StrategyPartition &partition);

/// counts[bin(g_n)][bin(g_{n+1})] over consecutive samples. Needs >= 2 samples.
TransitionCounts count_transitions(const GammaSeries &series, const StrategyPartition &partition);

/// Row-normalised counts; rows without observations become uniform.
TransitionMatrix empirical_transition_matrix(const TransitionCounts &counts);

/// Fraction of samples falling in each state.
StateDistribution occupancy_fractions(const GammaSeries &series, const StrategyPartition &partition);

/// sum N_ij log(theta_ij), with 0 log 0 = 0 and -infinity when an observed
/// transition has zero model probability.
double log_likelihood(const TransitionMatrix &model, const TransitionCounts &counts);

/// log L(mle) - log L(model) >= 0; +infinity when the model rules out an
/// observed transition.
double relative_likelihood(const TransitionMatrix &model, const TransitionCounts &counts);

LikelihoodReport score_model(std::string name, const TransitionMatrix &model,
                             const TransitionCounts &counts);

} // namespace gammachain
