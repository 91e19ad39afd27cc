#pragma once

#include <cstdint>
#include <random>
#include <utility>

namespace gammachain {

/**
 * Seedable random stream for simulation runs.
 *
 * The std:: distribution adaptors are implementation-defined, so uniform and
 * normal variates are derived here from the raw 64-bit engine output. The
 * same seed therefore yields the same stream on every standard library.
 */
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : m_engine(seed) {}

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform();
    /// Uniform on (0, 1].
    double uniform_positive();
    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t index(std::uint64_t n);
    /// Two independent standard normals (Box-Muller).
    std::pair<double, double> normal_pair();

  private:
    std::mt19937_64 m_engine;
};

} // namespace gammachain
