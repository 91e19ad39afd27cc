#pragma once

#include "gammachain/transition_matrix.hpp"

#include <Eigen/LU>

#include <stdexcept>
#include <string>
#include <vector>

namespace gammachain {

/// Raised when a chain has no unique stationary distribution.
class StationaryError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// True iff the directed graph with an edge i -> j wherever P(i, j) > 0 is
/// strongly connected.
template <typename Scalar> bool is_irreducible(const BasicTransitionMatrix<Scalar> &p) {
    const Eigen::Index k = p.size();
    // every state must reach every other one along positive entries, and be
    // reached from state 0 in the reversed graph
    auto reaches_all = [&](bool transpose) {
        std::vector<bool> seen(static_cast<std::size_t>(k), false);
        std::vector<Eigen::Index> stack{0};
        seen[0] = true;
        Eigen::Index visited = 1;
        while (!stack.empty()) {
            const Eigen::Index u = stack.back();
            stack.pop_back();
            for (Eigen::Index v = 0; v < k; ++v) {
                const Scalar w = transpose ? p(v, u) : p(u, v);
                if (w > Scalar(0) && !seen[static_cast<std::size_t>(v)]) {
                    seen[static_cast<std::size_t>(v)] = true;
                    ++visited;
                    stack.push_back(v);
                }
            }
        }
        return visited == k;
    };
    return reaches_all(false) && reaches_all(true);
}

/**
 * Solves pi = pi P with sum(pi) = 1.
 *
 * (P^T - I) has rank k - 1 for an irreducible chain; the last equation is
 * replaced by the normalisation row and the square system solved directly,
 * followed by one round of iterative refinement.
 *
 * Throws StationaryError for reducible chains or when the rank deficiency
 * exceeds one.
 */
template <typename Scalar>
BasicStateDistribution<Scalar> stationary_distribution(const BasicTransitionMatrix<Scalar> &p) {
    if (!is_irreducible(p))
        throw StationaryError("chain is not irreducible; stationary distribution is not unique");

    const Eigen::Index k = p.size();
    Matrix<Scalar> system = p.matrix().transpose() - Matrix<Scalar>::Identity(k, k);

    Eigen::FullPivLU<Matrix<Scalar>> rank_check(system);
    rank_check.setThreshold(Scalar(1e-12));
    if (rank_check.rank() < k - 1)
        throw StationaryError("balance equations lose more than one rank (rank " +
                              std::to_string(rank_check.rank()) + " of " + std::to_string(k) + ")");

    system.row(k - 1).setOnes();
    Vector<Scalar> rhs = Vector<Scalar>::Zero(k);
    rhs(k - 1) = Scalar(1);

    Eigen::FullPivLU<Matrix<Scalar>> lu(system);
    if (!lu.isInvertible())
        throw StationaryError("normalised balance system is singular");
    Vector<Scalar> pi = lu.solve(rhs);
    pi += lu.solve(Vector<Scalar>(rhs - system * pi));

    // roundoff can leave entries a few ulps below zero
    pi = pi.cwiseMax(Scalar(0));
    pi /= pi.sum();
    return BasicStateDistribution<Scalar>(std::move(pi));
}

/// ||pi P - pi||_inf.
template <typename Scalar>
Scalar stationary_residual(const BasicTransitionMatrix<Scalar> &p,
                           const BasicStateDistribution<Scalar> &pi) {
    const Vector<Scalar> moved = p.matrix().transpose() * pi.weights();
    return (moved - pi.weights()).cwiseAbs().maxCoeff();
}

} // namespace gammachain
