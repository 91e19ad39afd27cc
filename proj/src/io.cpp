#include "gammachain/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace gammachain::io {

namespace {

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.*g", kOutputDigits, x);
    return buf;
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string &line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ','))
        fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',')
        fields.emplace_back();
    return fields;
}

template <typename T> T parse_field(const std::string &field, std::size_t line_no) {
    T value{};
    const char *begin = field.data();
    const char *end = begin + field.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (field.empty() || ec != std::errc() || ptr != end)
        throw std::runtime_error("line " + std::to_string(line_no) + ": cannot parse '" + field +
                                 "' as a number");
    return value;
}

json rounded_matrix(const Eigen::MatrixXd &m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(round_for_output(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_rows(const json &rows) {
    if (!rows.is_array() || rows.empty())
        throw std::runtime_error("matrix must be a non-empty array of rows");
    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto cols = static_cast<Eigen::Index>(rows.at(0).size());
    Eigen::MatrixXd m(n, cols);
    for (Eigen::Index i = 0; i < n; ++i) {
        const json &row = rows.at(static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw std::runtime_error("matrix rows must have equal length");
        for (Eigen::Index j = 0; j < cols; ++j)
            m(i, j) = row.at(static_cast<std::size_t>(j)).get<double>();
    }
    return m;
}

} // namespace

double round_for_output(double x) {
    if (!std::isfinite(x))
        return x;
    return std::stod(format_number(x));
}

json extended_real(double x) {
    if (std::isinf(x))
        return x > 0 ? "Infinity" : "-Infinity";
    return round_for_output(x);
}

double extended_real_from_json(const json &j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "Infinity")
            return std::numeric_limits<double>::infinity();
        if (s == "-Infinity")
            return -std::numeric_limits<double>::infinity();
        throw std::runtime_error("unrecognised extended real '" + s + "'");
    }
    return j.get<double>();
}

json to_json(const StrategyPartition &partition) {
    json out = json::array();
    for (const Interval &a : partition.intervals())
        out.push_back({{"lower", a.lower}, {"upper", a.upper}, {"label", a.label}});
    return out;
}

StrategyPartition partition_from_json(const json &j) {
    if (!j.is_array())
        throw std::runtime_error("partition must be an array of {lower, upper, label}");
    std::vector<Interval> intervals;
    for (const json &item : j)
        intervals.push_back({item.at("lower").get<double>(), item.at("upper").get<double>(),
                             item.at("label").get<std::string>()});
    return StrategyPartition(std::move(intervals));
}

json to_json(const TransitionMatrix &matrix, const std::vector<std::string> &labels) {
    return {{"labels", labels}, {"matrix", rounded_matrix(matrix.matrix())}};
}

TransitionMatrix matrix_from_json(const json &j) {
    Eigen::MatrixXd m = matrix_from_rows(j.at("matrix"));
    // rows persisted at 12 digits can drift from 1 by ~1e-12; restore exactness
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        if (const double s = m.row(i).sum(); s > 0.0)
            m.row(i) /= s;
    return TransitionMatrix(std::move(m));
}

json to_json(const StateDistribution &dist, const std::vector<std::string> &labels) {
    json weights = json::array();
    for (Eigen::Index i = 0; i < dist.size(); ++i)
        weights.push_back(round_for_output(dist[i]));
    return {{"labels", labels}, {"weights", weights}};
}

StateDistribution distribution_from_json(const json &j) {
    const json &w = j.at("weights");
    Eigen::VectorXd v(static_cast<Eigen::Index>(w.size()));
    for (std::size_t i = 0; i < w.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = w.at(i).get<double>();
    if (const double s = v.sum(); s > 0.0)
        v /= s;
    return StateDistribution(std::move(v));
}

json to_json(const TransitionCounts &counts) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < counts.counts.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < counts.counts.cols(); ++j)
            row.push_back(counts.counts(i, j));
        rows.push_back(std::move(row));
    }
    return {{"labels", counts.partition.labels()},
            {"partition", to_json(counts.partition)},
            {"counts", rows},
            {"total", counts.total()}};
}

TransitionCounts counts_from_json(const json &j) {
    StrategyPartition partition = partition_from_json(j.at("partition"));
    const json &rows = j.at("counts");
    const auto k = static_cast<Eigen::Index>(rows.size());
    CountMatrix m(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        const json &row = rows.at(static_cast<std::size_t>(i));
        if (static_cast<Eigen::Index>(row.size()) != k)
            throw std::runtime_error("count matrix must be square");
        for (Eigen::Index c = 0; c < k; ++c)
            m(i, c) = row.at(static_cast<std::size_t>(c)).get<std::int64_t>();
    }
    return make_counts(std::move(m), std::move(partition));
}

json to_json(const LikelihoodReport &report) {
    return {{"model", report.model_name},
            {"relative_likelihood", extended_real(report.relative_likelihood)},
            {"log_likelihood", extended_real(report.log_likelihood)}};
}

LikelihoodReport likelihood_report_from_json(const json &j) {
    return {j.at("model").get<std::string>(), extended_real_from_json(j.at("relative_likelihood")),
            extended_real_from_json(j.at("log_likelihood"))};
}

json to_json(const GammaSeries &series) {
    json times = json::array();
    json values = json::array();
    for (double t : series.times)
        times.push_back(round_for_output(t));
    for (double v : series.values)
        values.push_back(round_for_output(v));
    return {{"seed", series.seed}, {"times", times}, {"values", values}};
}

GammaSeries series_from_json(const json &j) {
    GammaSeries s;
    s.seed = j.value("seed", std::uint64_t{0});
    s.times = j.at("times").get<std::vector<double>>();
    s.values = j.at("values").get<std::vector<double>>();
    if (s.times.size() != s.values.size())
        throw std::runtime_error("series times and values differ in length");
    return s;
}

json to_json(const RegionConfig &config) {
    json latency = json::array();
    for (Eigen::Index i = 0; i < config.mean_latency.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < config.mean_latency.cols(); ++j)
            row.push_back(config.mean_latency(i, j));
        latency.push_back(std::move(row));
    }
    return {{"region_names", config.region_names},
            {"node_counts", config.node_counts},
            {"mean_latency", latency}};
}

RegionConfig region_config_from_json(const json &j) {
    RegionConfig config;
    config.region_names = j.value("region_names", std::vector<std::string>{});
    config.node_counts = j.at("node_counts").get<std::vector<int>>();
    config.mean_latency = matrix_from_rows(j.at("mean_latency"));
    config.validate();
    return config;
}

void write_series_csv(std::ostream &out, const GammaSeries &series) {
    out << "time,gamma\n";
    for (std::size_t i = 0; i < series.values.size(); ++i)
        out << format_number(series.times[i]) << ',' << format_number(series.values[i]) << '\n';
}

GammaSeries read_series_csv(std::istream &in) {
    GammaSeries series;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string row = trim(line);
        if (row.empty())
            continue;
        if (!header_seen) {
            header_seen = true;
            if (row != "time,gamma")
                throw std::runtime_error("series CSV must start with the header 'time,gamma'");
            continue;
        }
        const auto fields = split_fields(row);
        if (fields.size() != 2)
            throw std::runtime_error("line " + std::to_string(line_no) + ": expected 2 fields");
        series.times.push_back(parse_field<double>(fields[0], line_no));
        series.values.push_back(parse_field<double>(fields[1], line_no));
    }
    if (!header_seen)
        throw std::runtime_error("series CSV is empty");
    return series;
}

void write_counts_csv(std::ostream &out, const CountMatrix &counts) {
    for (Eigen::Index i = 0; i < counts.rows(); ++i) {
        for (Eigen::Index j = 0; j < counts.cols(); ++j)
            out << (j ? "," : "") << counts(i, j);
        out << '\n';
    }
}

CountMatrix read_counts_csv(std::istream &in) {
    std::vector<std::vector<std::int64_t>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string row = trim(line);
        if (row.empty())
            continue;
        std::vector<std::int64_t> values;
        for (const auto &field : split_fields(row)) {
            const auto v = parse_field<std::int64_t>(field, line_no);
            if (v < 0)
                throw std::runtime_error("line " + std::to_string(line_no) + ": negative count");
            values.push_back(v);
        }
        rows.push_back(std::move(values));
    }
    if (rows.empty())
        throw std::runtime_error("counts CSV is empty");
    const auto k = static_cast<Eigen::Index>(rows.size());
    CountMatrix m(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != k)
            throw std::runtime_error("counts CSV must be square (" + std::to_string(k) + " rows)");
        for (Eigen::Index j = 0; j < k; ++j)
            m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return m;
}

void write_matrix_csv(std::ostream &out, const Eigen::MatrixXd &matrix,
                      const std::vector<std::string> &labels) {
    for (std::size_t i = 0; i < labels.size(); ++i)
        out << (i ? "," : "") << labels[i];
    out << '\n';
    for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
        for (Eigen::Index j = 0; j < matrix.cols(); ++j)
            out << (j ? "," : "") << format_number(matrix(i, j));
        out << '\n';
    }
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out)
        throw std::runtime_error("failed writing " + path.string());
}

json read_json_file(const std::filesystem::path &path) {
    try {
        return json::parse(read_text_file(path));
    } catch (const json::exception &e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path &path, const json &j) {
    write_text_file(path, j.dump(2) + "\n");
}

} // namespace gammachain::io
