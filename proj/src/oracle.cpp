#include "vdreg/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace vdreg::oracle {

namespace {

double dense_log_normal_exchangeable(std::span<const double> values, double mean, double diag, double common) {
    const auto n = static_cast<Eigen::Index>(values.size());
    if (n == 0) return 0.0;
    Eigen::MatrixXd cov = Eigen::MatrixXd::Constant(n, n, common);
    cov.diagonal().array() += diag;
    Eigen::VectorXd r(n);
    for (Eigen::Index i = 0; i < n; ++i) r(i) = values[static_cast<std::size_t>(i)] - mean;
    const Eigen::LLT<Eigen::MatrixXd> llt(cov);
    const Eigen::MatrixXd L = llt.matrixL();
    const double logdet = 2.0 * L.diagonal().array().log().sum();
    const double quad = r.dot(llt.solve(r));
    return -0.5 * (static_cast<double>(n) * std::log(2.0 * std::numbers::pi) + logdet + quad);
}

std::vector<std::vector<std::size_t>> groups(std::span<const int> labels) {
    int k = 0;
    for (int c : labels) k = std::max(k, c + 1);
    std::vector<std::vector<std::size_t>> g(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < labels.size(); ++i) g[static_cast<std::size_t>(labels[i])].push_back(i);
    return g;
}

// log g~ for an explicit list of rows, optionally with one extra row appended.
double cluster_log_sim(std::span<const std::size_t> rows, const Dataset& data, const ModelConfig& c,
                       const double* extra_x = nullptr, const std::uint8_t* extra_obs = nullptr) {
    double total = 0.0;
    for (std::size_t l = 0; l < data.p(); ++l) {
        std::vector<double> vals;
        for (std::size_t i : rows)
            if (data.is_observed(i, l)) vals.push_back(data.x(i, l));
        if (extra_x && extra_obs[l]) vals.push_back(extra_x[l]);
        if (vals.empty()) continue;
        if (data.kinds[l] == CovariateKind::continuous) {
            total += dense_log_sim_continuous(vals, c.sim_v1, c.sim_mu0, c.sim_s0sq);
        } else {
            std::vector<int> counts(static_cast<std::size_t>(data.n_levels[l]), 0);
            for (double v : vals) ++counts[static_cast<std::size_t>(std::lround(v))];
            total += rising_log_sim_categorical(counts, c.sim_alpha);
        }
    }
    return total;
}

PartitionTable normalize(std::vector<Partition> parts, std::vector<double> logw) {
    PartitionTable t;
    const double top = *std::max_element(logw.begin(), logw.end());
    double z = 0.0;
    for (double w : logw) z += std::exp(w - top);
    const double log_z = top + std::log(z);
    t.log_prob.reserve(logw.size());
    for (std::size_t i = 0; i < logw.size(); ++i) {
        t.log_prob.push_back(logw[i] - log_z);
        t.prob.push_back(std::exp(logw[i] - log_z));
        t.index.emplace(parts[i], i);
    }
    t.partitions = std::move(parts);
    return t;
}

}  // namespace

std::vector<Partition> enumerate_partitions(int m) {
    if (m > kMaxUnits) throw Error(ErrorCode::TooLarge, "partition enumeration is limited to m <= 10");
    if (m < 1) throw Error(ErrorCode::InvalidConfig, "m must be >= 1");
    std::vector<Partition> out;
    Partition a(static_cast<std::size_t>(m), 0);
    std::vector<int> prefix_max(static_cast<std::size_t>(m), 0);
    // Odometer over restricted growth strings.
    while (true) {
        out.push_back(a);
        int i = m - 1;
        while (i > 0 && a[static_cast<std::size_t>(i)] > prefix_max[static_cast<std::size_t>(i - 1)]) --i;
        if (i == 0) break;
        ++a[static_cast<std::size_t>(i)];
        prefix_max[static_cast<std::size_t>(i)] =
            std::max(prefix_max[static_cast<std::size_t>(i - 1)], a[static_cast<std::size_t>(i)]);
        for (int j = i + 1; j < m; ++j) {
            a[static_cast<std::size_t>(j)] = 0;
            prefix_max[static_cast<std::size_t>(j)] = prefix_max[static_cast<std::size_t>(i)];
        }
    }
    return out;
}

Partition canonical(std::span<const int> labels) {
    std::map<int, int> relabel;
    Partition out;
    out.reserve(labels.size());
    for (int c : labels) {
        auto [it, inserted] = relabel.emplace(c, static_cast<int>(relabel.size()));
        out.push_back(it->second);
    }
    return out;
}

std::size_t PartitionTable::index_of(std::span<const int> labels) const {
    const auto it = index.find(canonical(labels));
    if (it == index.end()) throw Error(ErrorCode::InvariantBreach, "partition not in table");
    return it->second;
}

double dense_log_sim_continuous(std::span<const double> values, double v1, double mu0, double s0sq) {
    return dense_log_normal_exchangeable(values, mu0, v1, s0sq);
}

double rising_log_sim_categorical(std::span<const int> counts, double alpha) {
    const double levels = static_cast<double>(counts.size());
    double num = 0.0;
    int n = 0;
    for (int c : counts) {
        for (int t = 0; t < c; ++t) num += std::log(alpha + t);
        n += c;
    }
    double den = 0.0;
    for (int t = 0; t < n; ++t) den += std::log(levels * alpha + t);
    return num - den;
}

double loop_log_cohesion(int size, double M) {
    double v = std::log(M);
    for (int t = 2; t < size; ++t) v += std::log(static_cast<double>(t));
    return v;
}

double log_prior_unnormalized(std::span<const int> labels, const Dataset& data, const ModelConfig& config) {
    double total = 0.0;
    for (const auto& rows : groups(labels))
        total += loop_log_cohesion(static_cast<int>(rows.size()), config.M) + cluster_log_sim(rows, data, config);
    return total;
}

PartitionTable exact_prior(const Dataset& data, const ModelConfig& config) {
    auto parts = enumerate_partitions(static_cast<int>(data.m()));
    std::vector<double> logw;
    logw.reserve(parts.size());
    for (const auto& part : parts) logw.push_back(log_prior_unnormalized(part, data, config));
    return normalize(std::move(parts), std::move(logw));
}

PartitionTable exact_posterior_fixed(const Dataset& data, const ModelConfig& config) {
    if (!config.fix.mu0 || !config.fix.sigma0 || !config.fix.sigma_star)
        throw Error(ErrorCode::MissingPins, "exact posterior needs mu0, sigma0 and sigma_star pinned");
    if (config.family != Family::gaussian) throw Error(ErrorCode::InvalidConfig, "exact posterior is Gaussian-only");
    if (!data.y) throw Error(ErrorCode::BadOutcome, "exact posterior needs responses");
    if (data.m() > 8) throw Error(ErrorCode::TooLarge, "exact posterior is limited to m <= 8");
    const double mu0 = *config.fix.mu0;
    const double s0 = *config.fix.sigma0;
    const double ss = *config.fix.sigma_star;
    auto parts = enumerate_partitions(static_cast<int>(data.m()));
    std::vector<double> logw;
    for (const auto& part : parts) {
        double lw = log_prior_unnormalized(part, data, config);
        for (const auto& rows : groups(part)) {
            std::vector<double> ys;
            for (std::size_t i : rows) ys.push_back((*data.y)[i]);
            lw += dense_log_normal_exchangeable(ys, mu0, ss * ss, s0 * s0);
        }
        logw.push_back(lw);
    }
    return normalize(std::move(parts), std::move(logw));
}

std::vector<double> exact_allocation(std::span<const double> x, std::span<const std::uint8_t> obs,
                                     std::span<const int> labels, const Dataset& data, const ModelConfig& config) {
    if (data.m() > static_cast<std::size_t>(kMaxUnits)) throw Error(ErrorCode::TooLarge, "oracle limited to m <= 10");
    std::vector<double> logw;
    for (const auto& rows : groups(labels)) {
        const int n = static_cast<int>(rows.size());
        logw.push_back(loop_log_cohesion(n + 1, config.M) + cluster_log_sim(rows, data, config, x.data(), obs.data()) -
                       loop_log_cohesion(n, config.M) - cluster_log_sim(rows, data, config));
    }
    logw.push_back(loop_log_cohesion(1, config.M) + cluster_log_sim({}, data, config, x.data(), obs.data()));
    double z = 0.0;
    for (double w : logw) z += std::exp(w);
    std::vector<double> p;
    for (double w : logw) p.push_back(std::exp(w) / z);
    return p;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw Error(ErrorCode::LengthMismatch, "distributions differ in support size");
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) d += std::abs(p[i] - q[i]);
    return 0.5 * d;
}

}  // namespace vdreg::oracle
