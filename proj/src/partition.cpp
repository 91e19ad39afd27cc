#include "gammachain/partition.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gammachain {

namespace {

void check_interval(const Interval &a) {
    if (!(a.lower <= a.upper)) {
        std::ostringstream msg;
        msg << "interval [" << a.lower << ", " << a.upper << "] has lower > upper";
        throw std::invalid_argument(msg.str());
    }
    if (a.lower < 0.0 || a.upper > 1.0)
        throw std::invalid_argument("interval must lie within [0, 1]");
}

} // namespace

double midpoint_distance(const Interval &a, const Interval &b) {
    check_interval(a);
    check_interval(b);
    return std::abs(a.midpoint() - b.midpoint());
}

StrategyPartition::StrategyPartition(std::vector<Interval> intervals)
    : m_intervals(std::move(intervals)) {
    if (m_intervals.empty())
        throw std::invalid_argument("partition needs at least one interval");
    if (m_intervals.front().lower != 0.0)
        throw std::invalid_argument("partition must start at 0");
    if (m_intervals.back().upper != 1.0)
        throw std::invalid_argument("partition must end at 1");

    std::set<std::string> seen;
    for (std::size_t i = 0; i < m_intervals.size(); ++i) {
        const Interval &a = m_intervals[i];
        check_interval(a);
        if (!(a.length() > 0.0))
            throw std::invalid_argument("interval '" + a.label + "' has zero length");
        if (i + 1 < m_intervals.size() && a.upper != m_intervals[i + 1].lower)
            throw std::invalid_argument("intervals '" + a.label + "' and '" +
                                        m_intervals[i + 1].label + "' are not contiguous");
        if (!seen.insert(a.label).second)
            throw std::invalid_argument("duplicate interval label '" + a.label + "'");
    }
}

std::vector<std::string> StrategyPartition::labels() const {
    std::vector<std::string> out;
    out.reserve(m_intervals.size());
    std::transform(m_intervals.begin(), m_intervals.end(), std::back_inserter(out),
                   [](const Interval &a) { return a.label; });
    return out;
}

std::size_t StrategyPartition::locate(double x) const {
    if (!(x >= 0.0 && x <= 1.0)) {
        std::ostringstream msg;
        msg << "value " << x << " lies outside [0, 1]";
        throw std::invalid_argument(msg.str());
    }
    // first interval whose upper bound is strictly greater than x
    auto it = std::upper_bound(m_intervals.begin(), m_intervals.end(), x,
                               [](double v, const Interval &a) { return v < a.upper; });
    if (it == m_intervals.end())
        return m_intervals.size() - 1; // x == 1 belongs to the closed last interval
    return static_cast<std::size_t>(std::distance(m_intervals.begin(), it));
}

StrategyPartition default_partition() {
    return partition_from_boundaries({0.0, 0.675, 0.76, 0.761, 1.0}, {"HM", "SM", "LSM", "EFSM"});
}

StrategyPartition partition_from_boundaries(const std::vector<double> &boundaries,
                                            const std::vector<std::string> &labels) {
    if (boundaries.size() != labels.size() + 1)
        throw std::invalid_argument("need exactly one more boundary than labels");
    std::vector<Interval> intervals;
    intervals.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        intervals.push_back({boundaries[i], boundaries[i + 1], labels[i]});
    return StrategyPartition(std::move(intervals));
}

} // namespace gammachain
