#pragma once

#include "gammachain/partition.hpp"
#include "gammachain/quadrature.hpp"
#include "gammachain/transition_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gammachain {

struct KernelConfig {
    double length_scale = 0.25;
};

inline void validate(const KernelConfig &config) {
    if (!(config.length_scale > 0.0) || !std::isfinite(config.length_scale))
        throw std::invalid_argument("kernel length scale must be a positive finite number");
}

/// exp(-(x - y)^2 / (2 l^2)).
template <typename Scalar = double>
Scalar sq_exp_kernel(Scalar x, Scalar y, const KernelConfig &config) {
    using std::exp;
    const Scalar r = (x - y) / Scalar(config.length_scale);
    return exp(Scalar(-0.5) * r * r);
}

/**
 * Midpoint-distance model.
 *
 * From source A_i, target A_j is weighted by length(A_j) * (1 - d(A_j, A_i)),
 * where d is the distance between interval midpoints; each row is then
 * normalised over all targets.
 */
template <typename Scalar = double>
BasicTransitionMatrix<Scalar> model1_transition_matrix(const StrategyPartition &partition) {
    const auto k = static_cast<Eigen::Index>(partition.size());
    Matrix<Scalar> p(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        const Interval &source = partition[i];
        for (Eigen::Index j = 0; j < k; ++j) {
            const Interval &target = partition[j];
            p(i, j) = Scalar(target.length()) *
                      (Scalar(1) - Scalar(midpoint_distance(target, source)));
        }
        p.row(i) /= p.row(i).sum();
    }
    return BasicTransitionMatrix<Scalar>(std::move(p));
}

enum class KernelIntegration { ClosedForm, Quadrature };

namespace detail {

// Second antiderivative of exp(-z^2 / s^2), s = l * sqrt(2).
template <typename Scalar> Scalar kernel_antiderivative2(Scalar z, Scalar s) {
    using std::erf;
    using std::exp;
    using std::sqrt;
    const Scalar sqrt_pi = sqrt(std::numbers::pi_v<Scalar>);
    const Scalar u = z / s;
    return s * sqrt_pi / Scalar(2) * z * erf(u) + s * s / Scalar(2) * exp(-u * u);
}

} // namespace detail

/// Double integral of the kernel over x in [x_lo, x_hi], y in [y_lo, y_hi],
/// evaluated through the error function.
template <typename Scalar = double>
Scalar kernel_mass_closed_form(Scalar x_lo, Scalar x_hi, Scalar y_lo, Scalar y_hi,
                               const KernelConfig &config) {
    const Scalar s = Scalar(config.length_scale) * std::numbers::sqrt2_v<Scalar>;
    auto F = [s](Scalar z) { return detail::kernel_antiderivative2(z, s); };
    // cancellation can leave a few ulps below zero for far-apart rectangles
    return std::max(Scalar(0), F(x_hi - y_lo) - F(x_lo - y_lo) - F(x_hi - y_hi) + F(x_lo - y_hi));
}

/// Same double integral by nested adaptive Gauss-Kronrod.
inline double kernel_mass_quadrature(double x_lo, double x_hi, double y_lo, double y_hi,
                                     const KernelConfig &config, double abs_tol = 1e-13) {
    const double inner_tol = abs_tol / std::max(1.0, y_hi - y_lo) / 4.0;
    auto inner = [&](double y) {
        return quadrature::integrate(
            [&](double x) { return sq_exp_kernel<double>(x, y, config); }, x_lo, x_hi, inner_tol);
    };
    return quadrature::integrate(inner, y_lo, y_hi, abs_tol / 2.0);
}

/**
 * Kernel-integral model.
 *
 * Entry (i, j) is the kernel mass between source A_i and target A_j divided by
 * the mass between A_i and the whole of [0, 1]. The closed form is the
 * reference path; the quadrature path exists to cross-check it.
 */
template <typename Scalar = double>
BasicTransitionMatrix<Scalar>
model2_transition_matrix(const StrategyPartition &partition, const KernelConfig &config,
                         KernelIntegration method = KernelIntegration::ClosedForm) {
    validate(config);
    const auto k = static_cast<Eigen::Index>(partition.size());
    auto mass = [&](double x_lo, double x_hi, double y_lo, double y_hi) -> Scalar {
        if (method == KernelIntegration::Quadrature)
            return Scalar(kernel_mass_quadrature(x_lo, x_hi, y_lo, y_hi, config));
        return kernel_mass_closed_form<Scalar>(Scalar(x_lo), Scalar(x_hi), Scalar(y_lo),
                                               Scalar(y_hi), config);
    };

    Matrix<Scalar> p(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        const Interval &source = partition[i];
        const Scalar total = mass(0.0, 1.0, source.lower, source.upper);
        if (!(total > Scalar(0)))
            throw std::domain_error("kernel mass underflowed for source '" + source.label + "'");
        for (Eigen::Index j = 0; j < k; ++j) {
            const Interval &target = partition[j];
            p(i, j) = mass(target.lower, target.upper, source.lower, source.upper) / total;
        }
        // numerator masses tile the denominator; absorb the last-bit rounding
        p.row(i) /= p.row(i).sum();
    }
    return BasicTransitionMatrix<Scalar>(std::move(p));
}

} // namespace gammachain
