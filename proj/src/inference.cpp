#include "gammachain/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gammachain {

TransitionCounts make_counts(CountMatrix counts, StrategyPartition partition) {
    const auto k = static_cast<Eigen::Index>(partition.size());
    if (counts.rows() != k || counts.cols() != k)
        throw std::invalid_argument("count matrix must be k x k for the partition");
    if ((counts.array() < 0).any())
        throw std::invalid_argument("transition counts must be non-negative");
    return {std::move(counts), std::move(partition)};
}

TransitionCounts reference_counts() {
    CountMatrix n(4, 4);
    n << 2977, 205, 0, 690, //
        213, 10, 1, 34,     //
        8, 1, 0, 6,         //
        676, 42, 0, 136;
    return make_counts(std::move(n), default_partition());
}

std::size_t bin_gamma(double value, const StrategyPartition &partition) {
    return partition.locate(value);
}

TransitionCounts count_transitions(const GammaSeries &series, const StrategyPartition &partition) {
    if (series.values.size() < 2)
        throw std::invalid_argument("need at least two samples to count transitions");
    const auto k = static_cast<Eigen::Index>(partition.size());
    CountMatrix counts = CountMatrix::Zero(k, k);
    auto from = static_cast<Eigen::Index>(bin_gamma(series.values.front(), partition));
    for (std::size_t n = 1; n < series.values.size(); ++n) {
        const auto to = static_cast<Eigen::Index>(bin_gamma(series.values[n], partition));
        ++counts(from, to);
        from = to;
    }
    return {std::move(counts), partition};
}

TransitionMatrix empirical_transition_matrix(const TransitionCounts &counts) {
    const Eigen::Index k = counts.counts.rows();
    Eigen::MatrixXd p(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        const auto row_total = counts.counts.row(i).sum();
        if (row_total == 0)
            p.row(i).setConstant(1.0 / static_cast<double>(k));
        else
            p.row(i) = counts.counts.row(i).cast<double>() / static_cast<double>(row_total);
    }
    return TransitionMatrix(std::move(p));
}

StateDistribution occupancy_fractions(const GammaSeries &series, const StrategyPartition &partition) {
    if (series.values.empty())
        throw std::invalid_argument("occupancy of an empty series");
    Eigen::VectorXd visits = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(partition.size()));
    for (double g : series.values)
        visits(static_cast<Eigen::Index>(bin_gamma(g, partition))) += 1.0;
    return StateDistribution(visits / static_cast<double>(series.values.size()));
}

double log_likelihood(const TransitionMatrix &model, const TransitionCounts &counts) {
    if (model.size() != counts.counts.rows() || counts.counts.rows() != counts.counts.cols())
        throw std::invalid_argument("model and count matrix dimensions differ");
    double total = 0.0;
    for (Eigen::Index i = 0; i < model.size(); ++i) {
        for (Eigen::Index j = 0; j < model.size(); ++j) {
            const auto n = counts.counts(i, j);
            if (n == 0)
                continue;
            if (model(i, j) == 0.0)
                return -std::numeric_limits<double>::infinity();
            total += static_cast<double>(n) * std::log(model(i, j));
        }
    }
    return total;
}

double relative_likelihood(const TransitionMatrix &model, const TransitionCounts &counts) {
    const double model_ll = log_likelihood(model, counts);
    if (std::isinf(model_ll))
        return std::numeric_limits<double>::infinity();
    const double best_ll = log_likelihood(empirical_transition_matrix(counts), counts);
    return std::max(0.0, best_ll - model_ll);
}

LikelihoodReport score_model(std::string name, const TransitionMatrix &model,
                             const TransitionCounts &counts) {
    return {std::move(name), relative_likelihood(model, counts), log_likelihood(model, counts)};
}

} // namespace gammachain
