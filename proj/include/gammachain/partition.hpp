#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace gammachain {

/// A closed-form description of one strategy interval of [0, 1].
struct Interval {
    double lower = 0.0;
    double upper = 0.0;
    std::string label;

    double length() const { return upper - lower; }
    double midpoint() const { return lower + (upper - lower) / 2.0; }
    bool operator==(const Interval &) const = default;
};

/// Distance between the midpoints of two intervals.
/// Throws std::invalid_argument when either interval has lower > upper
/// or leaves [0, 1].
double midpoint_distance(const Interval &a, const Interval &b);

/**
 * Ordered decomposition of [0, 1] into labelled strategy intervals.
 *
 * Membership is half-open, [lower, upper), except for the last interval,
 * which also owns the point 1. Construction validates coverage, positive
 * lengths and label uniqueness, so every instance is a valid partition.
 */
class StrategyPartition {
  public:
    explicit StrategyPartition(std::vector<Interval> intervals);

    std::size_t size() const { return m_intervals.size(); }
    const Interval &operator[](std::size_t i) const { return m_intervals[i]; }
    const std::vector<Interval> &intervals() const { return m_intervals; }
    std::vector<std::string> labels() const;

    /// Index of the interval that owns x. Throws for x outside [0, 1].
    std::size_t locate(double x) const;

    bool operator==(const StrategyPartition &) const = default;

  private:
    std::vector<Interval> m_intervals;
};

/// HM / SM / LSM / EFSM boundaries for an attacker holding 20% of the hashrate.
StrategyPartition default_partition();

/// Builds a partition from its boundary points and labels
/// (boundaries.size() == labels.size() + 1).
StrategyPartition partition_from_boundaries(const std::vector<double> &boundaries,
                                            const std::vector<std::string> &labels);

} // namespace gammachain
