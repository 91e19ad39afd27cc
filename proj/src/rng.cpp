#include "gammachain/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gammachain {

namespace {
constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;
}

double Rng::uniform() { return static_cast<double>(m_engine() >> 11) * kTwoPow53Inv; }

double Rng::uniform_positive() {
    return static_cast<double>((m_engine() >> 11) + 1) * kTwoPow53Inv;
}

std::uint64_t Rng::index(std::uint64_t n) {
    if (n == 0)
        throw std::invalid_argument("index range must be non-empty");
    // rejection keeps the draw unbiased
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x = m_engine();
    while (x >= limit)
        x = m_engine();
    return x % n;
}

std::pair<double, double> Rng::normal_pair() {
    const double radius = std::sqrt(-2.0 * std::log(uniform_positive()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

} // namespace gammachain
