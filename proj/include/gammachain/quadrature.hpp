#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace gammachain::quadrature {

namespace detail {

// 15-point Kronrod abscissae (non-negative half) and weights, with the
// embedded 7-point Gauss weights at the odd abscissae.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Estimate {
    double kronrod;
    double error;
};

template <typename F> Estimate gauss_kronrod_15(const F &f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[i];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeights[i] * sum;
        if (i % 2 == 1)
            gauss += kGaussWeights[i / 2] * sum;
    }
    return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

template <typename F>
double adaptive(const F &f, double a, double b, double tol, const Estimate &whole, int depth) {
    if (whole.error <= tol || depth <= 0)
        return whole.kronrod;
    const double mid = 0.5 * (a + b);
    const Estimate left = gauss_kronrod_15(f, a, mid);
    const Estimate right = gauss_kronrod_15(f, mid, b);
    return adaptive(f, a, mid, 0.5 * tol, left, depth - 1) +
           adaptive(f, mid, b, 0.5 * tol, right, depth - 1);
}

} // namespace detail

/// Adaptive Gauss-Kronrod (7/15) integral of f over [a, b]. Panels are
/// bisected until the Gauss/Kronrod difference on each is within its share
/// of abs_tol, or max_depth is exhausted.
template <typename F>
double integrate(const F &f, double a, double b, double abs_tol = 1e-12, int max_depth = 30) {
    if (!(abs_tol > 0.0))
        throw std::invalid_argument("quadrature tolerance must be positive");
    if (a == b)
        return 0.0;
    return detail::adaptive(f, a, b, abs_tol, detail::gauss_kronrod_15(f, a, b), max_depth);
}

} // namespace gammachain::quadrature
