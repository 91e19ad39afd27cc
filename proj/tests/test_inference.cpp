#include "gammachain/inference.hpp"
#include "gammachain/markov_models.hpp"
#include "gammachain/stationary.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace gammachain;

namespace {

GammaSeries series_of(std::vector<double> values) {
    GammaSeries s;
    for (std::size_t i = 0; i < values.size(); ++i)
        s.times.push_back(static_cast<double>(i));
    s.values = std::move(values);
    return s;
}

CountMatrix counts_of(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    CountMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
    Eigen::Index i = 0;
    for (const auto &row : rows) {
        Eigen::Index j = 0;
        for (auto v : row)
            m(i, j++) = v;
        ++i;
    }
    return m;
}

// Plain sum over cells, written out independently of the library.
double ll_oracle(const Eigen::MatrixXd &theta, const CountMatrix &n) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < n.rows(); ++i)
        for (Eigen::Index j = 0; j < n.cols(); ++j)
            if (n(i, j) > 0)
                total += static_cast<double>(n(i, j)) * std::log(theta(i, j));
    return total;
}

StrategyPartition halves() { return partition_from_boundaries({0.0, 0.5, 1.0}, {"lo", "hi"}); }

} // namespace

TEST_CASE("binning") {
    const StrategyPartition p = default_partition();
    CHECK(bin_gamma(0.0, p) == 0);
    CHECK(bin_gamma(0.675, p) == 1);
    CHECK(bin_gamma(0.7605, p) == 2);
    CHECK(bin_gamma(0.98, p) == 3);
    CHECK(bin_gamma(1.0, p) == 3);
    CHECK_THROWS_AS(bin_gamma(1.5, p), std::invalid_argument);
}

TEST_CASE("counting transitions") {
    const TransitionCounts c = count_transitions(series_of({0.1, 0.2, 0.7, 0.9}), default_partition());
    CHECK(c.total() == 3);
    CHECK(c.counts(0, 0) == 1);
    CHECK(c.counts(0, 1) == 1);
    CHECK(c.counts(1, 3) == 1);
    CHECK(c.partition == default_partition());

    CHECK_THROWS_AS(count_transitions(series_of({0.3}), default_partition()), std::invalid_argument);
    CHECK_THROWS_AS(count_transitions(series_of({}), default_partition()), std::invalid_argument);
}

TEST_CASE("count totals equal the number of steps") {
    Rng rng(17);
    for (int t = 0; t < 100; ++t) {
        std::vector<double> values(2 + rng.index(200));
        for (double &v : values)
            v = rng.uniform();
        const StrategyPartition p = testing::random_partition(rng);
        const TransitionCounts c = count_transitions(series_of(values), p);
        CHECK(c.total() == static_cast<std::int64_t>(values.size()) - 1);
        CHECK(c.counts.minCoeff() >= 0);
    }
}

TEST_CASE("make_counts validation") {
    CHECK_THROWS_AS(make_counts(CountMatrix::Zero(3, 3), default_partition()), std::invalid_argument);
    CHECK_THROWS_AS(make_counts(CountMatrix::Zero(4, 3), default_partition()), std::invalid_argument);
    CountMatrix neg = CountMatrix::Zero(2, 2);
    neg(0, 1) = -1;
    CHECK_THROWS_AS(make_counts(neg, halves()), std::invalid_argument);
}

TEST_CASE("reference counts") {
    const TransitionCounts n = reference_counts();
    CHECK(n.total() == 4999);
    CHECK(n.counts(0, 0) == 2977);
    CHECK(n.counts(3, 3) == 136);
    CHECK(n.counts(2, 2) == 0);
}

TEST_CASE("empirical matrix of the reference counts") {
    const TransitionMatrix p3 = empirical_transition_matrix(reference_counts());
    const double printed[4][4] = {
        {0.77, 0.05, 0, 0.18}, {0.83, 0.036, 0.004, 0.13}, {0.53, 0.07, 0, 0.4}, {0.79, 0.05, 0, 0.16}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(std::abs(p3(i, j) - printed[i][j]) <= 0.01);
    CHECK(p3(0, 0) == doctest::Approx(2977.0 / 3872.0).epsilon(1e-14));

    const StateDistribution pi3 = stationary_distribution(p3);
    const double expected[] = {0.7756518135902, 0.05156593863445, 0.0001998679792033, 0.1725823797961};
    for (int i = 0; i < 4; ++i)
        CHECK(pi3[i] == doctest::Approx(expected[i]).epsilon(1e-9));
}

TEST_CASE("empirical matrix edge cases") {
    const TransitionMatrix id = empirical_transition_matrix(make_counts(CountMatrix::Identity(4, 4) * 7, default_partition()));
    CHECK(id.matrix().isIdentity(0.0));
    CHECK_THROWS_AS(stationary_distribution(id), StationaryError);

    const TransitionMatrix zero = empirical_transition_matrix(make_counts(CountMatrix::Zero(4, 4), default_partition()));
    CHECK((zero.matrix().array() == 0.25).all());
}

TEST_CASE("occupancy fractions") {
    const StateDistribution occ = occupancy_fractions(series_of({0.1, 0.2, 0.7, 0.9}), default_partition());
    CHECK(occ[0] == 0.5);
    CHECK(occ[1] == 0.25);
    CHECK(occ[2] == 0.0);
    CHECK(occ[3] == 0.25);
    CHECK_THROWS_AS(occupancy_fractions(series_of({}), default_partition()), std::invalid_argument);
}

TEST_CASE("log-likelihood") {
    const TransitionCounts n = make_counts(counts_of({{3, 1}, {0, 2}}), halves());
    Eigen::MatrixXd theta(2, 2);
    theta << 0.75, 0.25, 0.0, 1.0;
    CHECK(log_likelihood(TransitionMatrix(theta), n) == doctest::Approx(3 * std::log(0.75) + std::log(0.25)));

    theta << 1.0, 0.0, 0.5, 0.5;
    CHECK(log_likelihood(TransitionMatrix(theta), n) == -std::numeric_limits<double>::infinity());
    CHECK(relative_likelihood(TransitionMatrix(theta), n) == std::numeric_limits<double>::infinity());

    const TransitionCounts none = make_counts(CountMatrix::Zero(2, 2), halves());
    CHECK(log_likelihood(TransitionMatrix(theta), none) == 0.0);
    CHECK(relative_likelihood(TransitionMatrix(theta), none) == 0.0);

    CHECK_THROWS_AS(log_likelihood(model1_transition_matrix(default_partition()), n), std::invalid_argument);
}

TEST_CASE("empirical matrix maximises the likelihood") {
    // grid search over all 2x2 stochastic matrices at step 1e-3
    const CountMatrix n = counts_of({{13, 29}, {41, 6}});
    const TransitionCounts counts = make_counts(n, halves());
    double best = -std::numeric_limits<double>::infinity();
    double best_a = 0, best_b = 0;
    for (int a = 1; a < 1000; ++a)
        for (int b = 1; b < 1000; ++b) {
            Eigen::MatrixXd theta(2, 2);
            theta << a / 1000.0, 1 - a / 1000.0, b / 1000.0, 1 - b / 1000.0;
            const double ll = ll_oracle(theta, n);
            if (ll > best) {
                best = ll;
                best_a = a / 1000.0;
                best_b = b / 1000.0;
            }
        }
    const TransitionMatrix mle = empirical_transition_matrix(counts);
    CHECK(mle(0, 0) == doctest::Approx(best_a).epsilon(1e-3));
    CHECK(mle(1, 0) == doctest::Approx(best_b).epsilon(2e-3));
    CHECK(log_likelihood(mle, counts) >= best);
    CHECK(relative_likelihood(mle, counts) == 0.0);
}

TEST_CASE("relative likelihood is non-negative and zero at the MLE") {
    Rng rng(29);
    for (int t = 0; t < 200; ++t) {
        const StrategyPartition p = testing::random_partition(rng, 6);
        const auto k = static_cast<Eigen::Index>(p.size());
        CountMatrix n(k, k);
        for (Eigen::Index i = 0; i < k; ++i)
            for (Eigen::Index j = 0; j < k; ++j)
                n(i, j) = static_cast<std::int64_t>(rng.index(50));
        const TransitionCounts counts = make_counts(n, p);
        CHECK(relative_likelihood(empirical_transition_matrix(counts), counts) == 0.0);
        CHECK(relative_likelihood(model1_transition_matrix(p), counts) >= 0.0);
        const double rl2 = relative_likelihood(model2_transition_matrix(p, KernelConfig{0.25}), counts);
        CHECK(rl2 >= 0.0);
        // oracle for the finite case
        const Eigen::MatrixXd mle = empirical_transition_matrix(counts).matrix();
        const Eigen::MatrixXd m1 = model1_transition_matrix(p).matrix();
        CHECK(relative_likelihood(model1_transition_matrix(p), counts) ==
              doctest::Approx(ll_oracle(mle, n) - ll_oracle(m1, n)).epsilon(1e-9));
    }
}

TEST_CASE("relative likelihoods of both models on the reference counts") {
    const TransitionCounts n = reference_counts();
    const LikelihoodReport r1 = score_model("model1", model1_transition_matrix(default_partition()), n);
    const LikelihoodReport r2 =
        score_model("model2", model2_transition_matrix(default_partition(), KernelConfig{0.25}), n);
    CHECK(r1.model_name == "model1");
    // independent float64 evaluation, frozen
    CHECK(r1.relative_likelihood == doctest::Approx(231.18286549400273).epsilon(1e-9));
    CHECK(r2.relative_likelihood == doctest::Approx(620.8800184704728).epsilon(1e-9));
    CHECK(r1.relative_likelihood < r2.relative_likelihood);
    CHECK(r1.log_likelihood > r2.log_likelihood);
}

TEST_CASE("doubling all counts doubles the relative likelihood") {
    const TransitionCounts n = reference_counts();
    const TransitionCounts n2 = make_counts(n.counts * 2, n.partition);
    const auto p1 = model1_transition_matrix(default_partition());
    CHECK(relative_likelihood(p1, n2) == doctest::Approx(2 * relative_likelihood(p1, n)).epsilon(1e-12));
}

TEST_CASE("long chains recover their transition matrix and stationary law") {
    Eigen::MatrixXd p(3, 3);
    p << 0.6, 0.3, 0.1, 0.2, 0.5, 0.3, 0.25, 0.25, 0.5;
    const StrategyPartition part = partition_from_boundaries({0.0, 0.3, 0.6, 1.0}, {"a", "b", "c"});
    const double centre[] = {0.15, 0.45, 0.8};
    Rng rng(101);
    const auto path = testing::simulate_chain(p, 0, 100000, rng);
    std::vector<double> values;
    for (int s : path)
        values.push_back(centre[s]);
    const GammaSeries series = series_of(values);

    const TransitionMatrix est = empirical_transition_matrix(count_transitions(series, part));
    CHECK((est.matrix() - p).cwiseAbs().maxCoeff() < 0.02);

    const StateDistribution pi = stationary_distribution(TransitionMatrix(p));
    const StateDistribution occ = occupancy_fractions(series, part);
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(occ[i] - pi[i]) < 0.02);
}
