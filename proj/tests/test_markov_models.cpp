#include "gammachain/markov_models.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace gammachain;

namespace {

// Independent double quadrature of the kernel model on the default partition
// (scipy dblquad, epsabs 1e-14), frozen here.
const double kKernelReference[4][4] = {
    {8.438527762252e-01, 6.489071287426e-02, 6.469927296491e-04, 9.060951817087e-02},
    {4.964786123574e-01, 1.548731877335e-01, 1.804107547077e-03, 3.468440923620e-01},
    {4.398690902055e-01, 1.603128993497e-01, 1.923089540979e-03, 3.978949209039e-01},
    {3.158937497312e-01, 1.580460021615e-01, 2.040382373057e-03, 5.240198657342e-01}};

void check_row_stochastic(const Eigen::MatrixXd &m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        CHECK(std::abs(m.row(i).sum() - 1.0) < 1e-9);
        CHECK(m.row(i).minCoeff() >= 0.0);
    }
}

} // namespace

TEST_CASE("midpoint model on the default partition") {
    const TransitionMatrix p = model1_transition_matrix(default_partition());

    // HM row by hand: lengths times (1 - midpoint distance to HM)
    const double weights[] = {0.675 * 1.0, 0.085 * (1 - 0.38), 0.001 * (1 - 0.423), 0.239 * (1 - 0.543)};
    CHECK(weights[1] == doctest::Approx(0.0527));
    CHECK(weights[2] == doctest::Approx(0.000577));
    CHECK(weights[3] == doctest::Approx(0.109223));
    const double total = weights[0] + weights[1] + weights[2] + weights[3];
    for (int j = 0; j < 4; ++j)
        CHECK(p(0, j) == doctest::Approx(weights[j] / total).epsilon(1e-12));
    CHECK(p(0, 0) == doctest::Approx(0.806).epsilon(1e-3));
    CHECK(p(0, 3) == doctest::Approx(0.130).epsilon(2e-3));

    const double printed[4][4] = {
        {0.81, 0.06, 0, 0.13}, {0.59, 0.12, 0.01, 0.28}, {0.57, 0.12, 0, 0.31}, {0.5, 0.11, 0, 0.39}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(std::abs(p(i, j) - printed[i][j]) <= 0.01);
}

TEST_CASE("single-interval partition gives the 1x1 identity") {
    const StrategyPartition whole({{0.0, 1.0, "ALL"}});
    CHECK(model1_transition_matrix(whole)(0, 0) == 1.0);
    CHECK(model2_transition_matrix(whole, KernelConfig{0.25})(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("squared exponential kernel") {
    const KernelConfig cfg{0.25};
    CHECK(sq_exp_kernel(0.5, 0.5, cfg) == 1.0);
    CHECK(sq_exp_kernel(0.5, 0.75, cfg) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
    CHECK(sq_exp_kernel(0.5, 0.75, cfg) == doctest::Approx(0.6065).epsilon(1e-4));
    CHECK(sq_exp_kernel(0.0, 1.0, cfg) == doctest::Approx(std::exp(-8.0)).epsilon(1e-15));
    CHECK(sq_exp_kernel(0.0, 1.0, cfg) == doctest::Approx(3.35e-4).epsilon(1e-3));
}

TEST_CASE("kernel bounds on [0, 1]") {
    Rng rng(5);
    const KernelConfig cfg{0.25};
    for (int i = 0; i < 10000; ++i) {
        const double x = rng.uniform(), y = rng.uniform();
        const double k = sq_exp_kernel(x, y, cfg);
        CHECK(k > 0.0);
        CHECK(k <= 1.0);
        CHECK(k == sq_exp_kernel(y, x, cfg));
        if (x != y)
            CHECK(k < 1.0);
    }
}

TEST_CASE("kernel model on the default partition matches the frozen quadrature") {
    const TransitionMatrix p = model2_transition_matrix(default_partition(), KernelConfig{0.25});
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(p(i, j) == doctest::Approx(kKernelReference[i][j]).epsilon(1e-9));
}

TEST_CASE("kernel model on a symmetric two-interval partition") {
    const StrategyPartition halves = partition_from_boundaries({0.0, 0.5, 1.0}, {"lo", "hi"});
    const TransitionMatrix p = model2_transition_matrix(halves, KernelConfig{0.25});

    const double stay = testing::midpoint_rule_kernel_mass(0.0, 0.5, 0.0, 0.5, 0.25);
    const double all = testing::midpoint_rule_kernel_mass(0.0, 1.0, 0.0, 0.5, 0.25);
    const double oracle = stay / all;
    CHECK(oracle == doctest::Approx(0.7614287660604422).epsilon(1e-5));

    CHECK(p(0, 0) == doctest::Approx(oracle).epsilon(1e-5));
    CHECK(p(0, 0) > 0.5);
    CHECK(p(1, 1) == doctest::Approx(p(0, 0)).epsilon(1e-12));
    CHECK(p(0, 1) == doctest::Approx(1.0 - p(0, 0)).epsilon(1e-12));
    CHECK(p(1, 0) == doctest::Approx(p(0, 1)).epsilon(1e-12));
}

TEST_CASE("closed form and quadrature agree") {
    Rng rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const StrategyPartition part = trial == 0 ? default_partition() : testing::random_partition(rng, 6);
        const double l = trial == 0 ? 0.25 : 0.05 + 0.5 * rng.uniform();
        const auto closed = model2_transition_matrix(part, KernelConfig{l}, KernelIntegration::ClosedForm);
        const auto quad = model2_transition_matrix(part, KernelConfig{l}, KernelIntegration::Quadrature);
        CHECK((closed.matrix() - quad.matrix()).cwiseAbs().maxCoeff() < 1e-7);
    }
}

TEST_CASE("kernel masses agree entrywise") {
    const KernelConfig cfg{0.25};
    const double closed = kernel_mass_closed_form(0.761, 1.0, 0.76, 0.761, cfg);
    const double quad = kernel_mass_quadrature(0.761, 1.0, 0.76, 0.761, cfg);
    CHECK(std::abs(closed - quad) < 1e-12);
}

TEST_CASE("invalid kernel configuration is rejected") {
    CHECK_THROWS_AS(model2_transition_matrix(default_partition(), KernelConfig{0.0}), std::invalid_argument);
    CHECK_THROWS_AS(model2_transition_matrix(default_partition(), KernelConfig{-1.0}), std::invalid_argument);
    CHECK_THROWS_AS(model2_transition_matrix(default_partition(), KernelConfig{NAN}), std::invalid_argument);
}

TEST_CASE("extended precision instantiation agrees with double") {
    const auto pd = model1_transition_matrix<double>(default_partition());
    const auto pl = model1_transition_matrix<long double>(default_partition());
    CHECK((pd.matrix().cast<long double>() - pl.matrix()).cwiseAbs().maxCoeff() < 1e-14L);

    const auto kd = model2_transition_matrix<double>(default_partition(), KernelConfig{0.25});
    const auto kl = model2_transition_matrix<long double>(default_partition(), KernelConfig{0.25});
    CHECK((kd.matrix().cast<long double>() - kl.matrix()).cwiseAbs().maxCoeff() < 1e-12L);
}

TEST_CASE("both models are row-stochastic on random partitions") {
    Rng rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        const StrategyPartition part = testing::random_partition(rng);
        check_row_stochastic(model1_transition_matrix(part).matrix());
        check_row_stochastic(model2_transition_matrix(part, KernelConfig{0.05 + rng.uniform()}).matrix());
    }
}

namespace {

// Every pair of equal-length targets: the closer one must not receive less.
template <typename Model>
int equal_length_violations(const StrategyPartition &part, const Model &p) {
    int violations = 0;
    for (std::size_t s = 0; s < part.size(); ++s)
        for (std::size_t a = 0; a < part.size(); ++a)
            for (std::size_t b = 0; b < part.size(); ++b) {
                if (a == b || std::abs(part[a].length() - part[b].length()) > 1e-12)
                    continue;
                if (midpoint_distance(part[a], part[s]) < midpoint_distance(part[b], part[s]) &&
                    p(s, a) < p(s, b) - 1e-12)
                    ++violations;
            }
    return violations;
}

} // namespace

TEST_CASE("closer equal-length targets are at least as likely") {
    Rng rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const StrategyPartition part = testing::random_partition_with_repeats(rng);
        CHECK(equal_length_violations(part, model1_transition_matrix(part)) == 0);
        CHECK(equal_length_violations(part, model2_transition_matrix(part, KernelConfig{0.25})) == 0);
    }
}

TEST_CASE("longer targets at equal midpoint distance are at least as likely") {
    // source centred at c, one target each side at distance d, lengths differ;
    // the gaps are filled with neutral intervals
    Rng rng(99);
    int constructed = 0;
    while (constructed < 300) {
        const double c = 0.3 + 0.4 * rng.uniform();
        const double h = 0.01 + 0.05 * rng.uniform();
        const double d = h + 0.05 + 0.2 * rng.uniform();
        const double short_len = 0.01 + 0.05 * rng.uniform();
        const double long_len = short_len * (1.1 + 2.0 * rng.uniform());
        const bool long_on_right = rng.uniform() < 0.5;
        const double left_len = long_on_right ? short_len : long_len;
        const double right_len = long_on_right ? long_len : short_len;

        const double l_lo = c - d - left_len / 2, l_hi = c - d + left_len / 2;
        const double r_lo = c + d - right_len / 2, r_hi = c + d + right_len / 2;
        if (l_lo <= 0.0 || r_hi >= 1.0 || l_hi >= c - h || r_lo <= c + h)
            continue;
        ++constructed;
        const StrategyPartition part = partition_from_boundaries(
            {0.0, l_lo, l_hi, c - h, c + h, r_lo, r_hi, 1.0},
            {"fill0", "left", "gap0", "source", "gap1", "right", "fill1"});
        const std::size_t src = 3, left = 1, right = 5;
        REQUIRE(midpoint_distance(part[left], part[src]) ==
                doctest::Approx(midpoint_distance(part[right], part[src])).epsilon(1e-9));
        const std::size_t longer = long_on_right ? right : left;
        const std::size_t shorter = long_on_right ? left : right;

        const auto p1 = model1_transition_matrix(part);
        CHECK(p1(src, longer) >= p1(src, shorter) - 1e-12);
        const auto p2 = model2_transition_matrix(part, KernelConfig{0.25});
        CHECK(p2(src, longer) >= p2(src, shorter) - 1e-12);
    }
}
