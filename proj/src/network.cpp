#include "gammachain/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gammachain {

int RegionConfig::total_nodes() const {
    return std::accumulate(node_counts.begin(), node_counts.end(), 0);
}

std::vector<int> RegionConfig::region_of_nodes() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(total_nodes()));
    for (std::size_t r = 0; r < node_counts.size(); ++r)
        out.insert(out.end(), static_cast<std::size_t>(node_counts[r]), static_cast<int>(r));
    return out;
}

void RegionConfig::validate() const {
    const auto regions = static_cast<Eigen::Index>(node_counts.size());
    if (regions == 0)
        throw std::invalid_argument("region config needs at least one region");
    if (!region_names.empty() && static_cast<Eigen::Index>(region_names.size()) != regions)
        throw std::invalid_argument("region_names and node_counts differ in length");
    if (mean_latency.rows() != regions || mean_latency.cols() != regions)
        throw std::invalid_argument("mean_latency must be regions x regions");
    if (std::any_of(node_counts.begin(), node_counts.end(), [](int n) { return n < 0; }))
        throw std::invalid_argument("node counts must be non-negative");
    if (total_nodes() < 2)
        throw std::invalid_argument("network needs at least two nodes");
    for (Eigen::Index l = 0; l < regions; ++l) {
        for (Eigen::Index m = 0; m < regions; ++m) {
            if (!(mean_latency(l, m) > 0.0) || !std::isfinite(mean_latency(l, m)))
                throw std::invalid_argument("mean latencies must be positive and finite");
            if (mean_latency(l, m) != mean_latency(m, l))
                throw std::invalid_argument("mean_latency must be symmetric");
        }
    }
}

RegionConfig RegionConfig::with_node_count(int node_count) const {
    validate();
    if (node_count < 2)
        throw std::invalid_argument("network needs at least two nodes");
    RegionConfig out = *this;
    const double total = total_nodes();
    std::vector<double> remainders(node_counts.size());
    int assigned = 0;
    for (std::size_t r = 0; r < node_counts.size(); ++r) {
        const double exact = node_counts[r] * node_count / total;
        out.node_counts[r] = static_cast<int>(std::floor(exact));
        remainders[r] = exact - out.node_counts[r];
        assigned += out.node_counts[r];
    }
    std::vector<std::size_t> order(node_counts.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
    for (std::size_t i = 0; assigned < node_count; ++i, ++assigned)
        ++out.node_counts[order[i % order.size()]];
    return out;
}

RegionConfig default_region_config() {
    RegionConfig config;
    config.region_names = {"NORTH_AMERICA", "EUROPE", "SOUTH_AMERICA",
                           "ASIA_PACIFIC",  "JAPAN",  "AUSTRALIA"};
    config.node_counts = {33, 50, 1, 12, 2, 2};
    config.mean_latency.resize(6, 6);
    config.mean_latency << 32, 124, 184, 198, 151, 189, //
        124, 11, 227, 237, 252, 294,                     //
        184, 227, 88, 325, 301, 322,                     //
        198, 237, 325, 85, 58, 198,                      //
        151, 252, 301, 58, 12, 126,                      //
        189, 294, 322, 198, 126, 16;
    return config;
}

namespace {

double clamp_latency(double w) { return std::clamp(w, kLatencyFloor, kLatencyCeiling); }

void check_node(const NetworkState &state, int node) {
    if (node < 0 || node >= state.node_count()) {
        std::ostringstream msg;
        msg << "node " << node << " outside [0, " << state.node_count() << ")";
        throw std::out_of_range(msg.str());
    }
}

} // namespace

NetworkState init_network(const RegionConfig &config, double dropout, Rng &rng) {
    config.validate();
    if (!(dropout >= 0.0 && dropout < 1.0))
        throw std::invalid_argument("dropout must lie in [0, 1)");
    if ((config.mean_latency.array() <= 5.0).any())
        throw std::invalid_argument("mean latencies must exceed 5 for the Pareto draw");

    NetworkState state;
    state.region_of = config.region_of_nodes();
    const int n = config.total_nodes();
    state.weights = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n - 1; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double w = kInactive;
            if (rng.uniform() >= dropout) {
                const double mean = config.mean_latency(state.region_of[i], state.region_of[j]);
                const double shape = 0.2 * mean;
                const double scale = mean - 5.0;
                w = clamp_latency(scale / std::pow(rng.uniform_positive(), 1.0 / shape));
            }
            state.weights(i, j) = w;
            state.weights(j, i) = w;
        }
    }
    return state;
}

NetworkState init_network(const RegionConfig &config, double dropout, std::uint64_t seed) {
    Rng rng(seed);
    return init_network(config, dropout, rng);
}

CentralityVector eigenvector_centrality(const Eigen::MatrixXd &adjacency) {
    constexpr int kMaxIterations = 50;
    constexpr double kTolerance = 1e-5;

    const Eigen::Index n = adjacency.rows();
    if (adjacency.cols() != n)
        throw std::invalid_argument("adjacency must be square");
    if (n == 0)
        return {};

    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    for (int it = 0; it < kMaxIterations; ++it) {
        const Eigen::VectorXd last = x;
        x = adjacency * last;
        const double norm = x.norm();
        if (norm == 0.0)
            return {Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)))};
        x /= norm;
        if ((x - last).lpNorm<1>() < static_cast<double>(n) * kTolerance)
            break;
    }
    return {x};
}

Eigen::MatrixXd adjacency_of(const NetworkState &state) {
    return (state.weights.array() < kInactive).cast<double>().matrix();
}

CentralityVector eigenvector_centrality(const NetworkState &state) {
    return eigenvector_centrality(adjacency_of(state));
}

double sample_skew_normal(double shape, Rng &rng) {
    const double delta = shape / std::sqrt(1.0 + shape * shape);
    const auto [u0, u1] = rng.normal_pair();
    return delta * std::abs(u0) + std::sqrt(1.0 - delta * delta) * u1;
}

double sample_skew_normal(double shape, std::uint64_t seed) {
    Rng rng(seed);
    return sample_skew_normal(shape, rng);
}

NetworkState evolve_network(const NetworkState &prev, const RegionConfig &config,
                            const EvolveParams &params, Rng &rng) {
    if (!(params.delta_t > 0.0) || !std::isfinite(params.delta_t))
        throw std::invalid_argument("delta_t must be positive");
    if (!(params.activation >= 0.0 && params.activation <= 1.0))
        throw std::invalid_argument("activation must lie in [0, 1]");
    config.validate();
    const int n = prev.node_count();
    if (config.total_nodes() != n || static_cast<int>(prev.region_of.size()) != n)
        throw std::invalid_argument("region config does not match the network size");

    Eigen::MatrixXd sampled = Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < n - 1; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (rng.uniform() < params.activation) {
                sampled(i, j) = 1.0;
                sampled(j, i) = 1.0;
            }
        }
    }
    const Eigen::VectorXd omega = eigenvector_centrality(sampled).scores;

    NetworkState next;
    next.region_of = prev.region_of;
    next.weights = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n - 1; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double shape = 3.0 * (omega(i) + omega(j));
            double w = kInactive;
            if (prev.active(i, j)) {
                if (sampled(i, j) == 1.0)
                    w = clamp_latency(prev.weights(i, j) *
                                      (1.0 + params.delta_t * sample_skew_normal(shape, rng)));
            } else {
                const double mean = config.mean_latency(prev.region_of[i], prev.region_of[j]);
                w = clamp_latency(mean * (1.0 + params.delta_t * sample_skew_normal(shape, rng)));
            }
            next.weights(i, j) = w;
            next.weights(j, i) = w;
        }
    }
    return next;
}

NetworkState evolve_network(const NetworkState &prev, const RegionConfig &config,
                            const EvolveParams &params, std::uint64_t seed) {
    Rng rng(seed);
    return evolve_network(prev, config, params, rng);
}

std::vector<double> shortest_latencies(const NetworkState &state, int source) {
    check_node(state, source);
    const int n = state.node_count();
    std::vector<double> dist(static_cast<std::size_t>(n), kInactive);
    std::vector<bool> done(static_cast<std::size_t>(n), false);
    dist[static_cast<std::size_t>(source)] = 0.0;

    // dense O(V^2) variant; the graph is a full matrix anyway
    for (int round = 0; round < n; ++round) {
        int u = -1;
        double best = kInactive;
        for (int v = 0; v < n; ++v) {
            if (!done[static_cast<std::size_t>(v)] && dist[static_cast<std::size_t>(v)] < best) {
                best = dist[static_cast<std::size_t>(v)];
                u = v;
            }
        }
        if (u < 0)
            break;
        done[static_cast<std::size_t>(u)] = true;
        for (int v = 0; v < n; ++v) {
            if (v == u || done[static_cast<std::size_t>(v)] || !state.active(u, v))
                continue;
            const double candidate = best + state.weights(u, v);
            if (candidate < dist[static_cast<std::size_t>(v)])
                dist[static_cast<std::size_t>(v)] = candidate;
        }
    }
    return dist;
}

double gamma_of(const NetworkState &state, int attacker, int honest) {
    check_node(state, attacker);
    check_node(state, honest);
    if (attacker == honest)
        throw std::invalid_argument("attacker and honest node must differ");
    const std::vector<double> from_attacker = shortest_latencies(state, attacker);
    const std::vector<double> from_honest = shortest_latencies(state, honest);
    int closer = 0;
    for (int i = 0; i < state.node_count(); ++i) {
        if (i == attacker || i == honest)
            continue;
        if (from_attacker[static_cast<std::size_t>(i)] < from_honest[static_cast<std::size_t>(i)])
            ++closer;
    }
    return static_cast<double>(closer) / state.node_count();
}

} // namespace gammachain
