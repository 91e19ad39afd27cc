#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gammachain {

inline constexpr double kStochasticTolerance = 1e-9;

template <typename Scalar> using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar> using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/**
 * Square row-stochastic matrix over the states of a strategy partition.
 *
 * Entries lie in [0, 1] and every row sums to one within
 * kStochasticTolerance; the constructor rejects anything else.
 */
template <typename Scalar> class BasicTransitionMatrix {
  public:
    using MatrixType = Matrix<Scalar>;

    explicit BasicTransitionMatrix(MatrixType entries) : m_entries(std::move(entries)) {
        if (m_entries.rows() != m_entries.cols() || m_entries.rows() == 0)
            throw std::invalid_argument("transition matrix must be square and non-empty");
        for (Eigen::Index i = 0; i < m_entries.rows(); ++i) {
            for (Eigen::Index j = 0; j < m_entries.cols(); ++j) {
                const Scalar v = m_entries(i, j);
                if (!(v >= Scalar(0) && v <= Scalar(1))) {
                    std::ostringstream msg;
                    msg << "transition entry (" << i << ", " << j << ") = " << double(v)
                        << " is outside [0, 1]";
                    throw std::invalid_argument(msg.str());
                }
            }
            const Scalar row_sum = m_entries.row(i).sum();
            if (std::abs(double(row_sum) - 1.0) > kStochasticTolerance) {
                std::ostringstream msg;
                msg << "row " << i << " sums to " << double(row_sum) << ", not 1";
                throw std::invalid_argument(msg.str());
            }
        }
    }

    Eigen::Index size() const { return m_entries.rows(); }
    Scalar operator()(Eigen::Index i, Eigen::Index j) const { return m_entries(i, j); }
    const MatrixType &matrix() const { return m_entries; }

  private:
    MatrixType m_entries;
};

/// Probability vector over partition states.
template <typename Scalar> class BasicStateDistribution {
  public:
    using VectorType = Vector<Scalar>;

    explicit BasicStateDistribution(VectorType weights) : m_weights(std::move(weights)) {
        if (m_weights.size() == 0)
            throw std::invalid_argument("state distribution must be non-empty");
        for (Eigen::Index i = 0; i < m_weights.size(); ++i)
            if (!(m_weights(i) >= Scalar(0) && m_weights(i) <= Scalar(1)))
                throw std::invalid_argument("state distribution entries must lie in [0, 1]");
        if (std::abs(double(m_weights.sum()) - 1.0) > kStochasticTolerance)
            throw std::invalid_argument("state distribution must sum to 1");
    }

    Eigen::Index size() const { return m_weights.size(); }
    Scalar operator[](Eigen::Index i) const { return m_weights(i); }
    const VectorType &weights() const { return m_weights; }

  private:
    VectorType m_weights;
};

using TransitionMatrix = BasicTransitionMatrix<double>;
using StateDistribution = BasicStateDistribution<double>;

} // namespace gammachain
