#include "vdreg/partition_prior.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vdreg {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

double log_normal(double x, double mean, double var) {
    const double d = x - mean;
    return -0.5 * (kLog2Pi + std::log(var) + d * d / var);
}

// Posterior predictive of the next value after n values summing to `sum`.
double continuous_increment(double x, int n, double sum, double v1, double mu0, double s0sq) {
    const double post_var = 1.0 / (1.0 / s0sq + n / v1);
    const double post_mean = post_var * (mu0 / s0sq + sum / v1);
    return log_normal(x, post_mean, post_var + v1);
}

}  // namespace

double log_cohesion(int size, double M) {
    if (size < 1) throw Error(ErrorCode::EmptyCluster, "cohesion of an empty cluster");
    return std::log(M) + std::lgamma(static_cast<double>(size));
}

double log_sim_continuous(std::span<const double> values, double v1, double mu0, double s0sq) {
    double total = 0.0;
    double sum = 0.0;
    int n = 0;
    for (double x : values) {
        total += continuous_increment(x, n, sum, v1, mu0, s0sq);
        sum += x;
        ++n;
    }
    return total;
}

double log_sim_categorical(std::span<const int> counts, double alpha) {
    const double levels = static_cast<double>(counts.size());
    double n = 0.0;
    double total = 0.0;
    for (int c : counts) {
        if (c == 0) continue;
        total += std::lgamma(alpha + c) - std::lgamma(alpha);
        n += c;
    }
    if (n == 0.0) return 0.0;
    return total + std::lgamma(levels * alpha) - std::lgamma(levels * alpha + n);
}

std::vector<ClusterCovariateView> cluster_views(std::span<const std::size_t> members, const Dataset& data) {
    std::vector<ClusterCovariateView> views(data.p());
    for (std::size_t i : members)
        for (std::size_t l = 0; l < data.p(); ++l)
            if (data.is_observed(i, l)) views[l].values.push_back(data.x(i, l));
    return views;
}

double log_modified_similarity(std::span<const ClusterCovariateView> views, std::span<const CovariateKind> kinds,
                               std::span<const int> n_levels, const ModelConfig& config) {
    double total = 0.0;
    for (std::size_t l = 0; l < views.size(); ++l) {
        const auto& v = views[l].values;
        if (v.empty()) continue;
        if (kinds[l] == CovariateKind::continuous) {
            total += log_sim_continuous(v, config.sim_v1, config.sim_mu0, config.sim_s0sq);
        } else {
            std::vector<int> counts(static_cast<std::size_t>(n_levels[l]), 0);
            for (double level : v) ++counts.at(static_cast<std::size_t>(level));
            total += log_sim_categorical(counts, config.sim_alpha);
        }
    }
    return total;
}

namespace {

std::vector<std::vector<std::size_t>> members_of(std::span<const int> labels) {
    int k = 0;
    for (int c : labels) {
        if (c < 0) throw Error(ErrorCode::LabelGap, "negative cluster label");
        k = std::max(k, c + 1);
    }
    std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < labels.size(); ++i) members[static_cast<std::size_t>(labels[i])].push_back(i);
    for (std::size_t j = 0; j < members.size(); ++j)
        if (members[j].empty()) throw Error(ErrorCode::LabelGap, "cluster " + std::to_string(j + 1) + " is empty");
    return members;
}

}  // namespace

double log_partition_prior(std::span<const int> labels, const Dataset& data, const ModelConfig& config) {
    if (labels.size() != data.m()) throw Error(ErrorCode::LengthMismatch, "label vector length differs from m");
    double total = 0.0;
    for (const auto& members : members_of(labels)) {
        const auto views = cluster_views(members, data);
        total += log_cohesion(static_cast<int>(members.size()), config.M) +
                 log_modified_similarity(views, data.kinds, data.n_levels, config);
    }
    return total;
}

SimilarityModel::SimilarityModel(std::vector<CovariateKind> kinds, std::vector<int> n_levels,
                                 const ModelConfig& config)
    : kinds_(std::move(kinds)),
      n_levels_(std::move(n_levels)),
      v1_(config.sim_v1),
      mu0_(config.sim_mu0),
      s0sq_(config.sim_s0sq),
      alpha_(config.sim_alpha) {
    if (n_levels_.size() != kinds_.size()) throw Error(ErrorCode::ShapeMismatch, "kinds/levels length mismatch");
    int offset = 0;
    offset_.reserve(kinds_.size());
    for (std::size_t l = 0; l < kinds_.size(); ++l) {
        offset_.push_back(offset);
        if (kinds_[l] == CovariateKind::categorical) offset += n_levels_[l];
    }
    offset_.push_back(offset);
}

SimilarityModel::SimilarityModel(const Dataset& schema, const ModelConfig& config)
    : SimilarityModel(schema.kinds, schema.n_levels, config) {}

ClusterSummary SimilarityModel::empty() const {
    ClusterSummary s;
    s.n.assign(p(), 0);
    s.sum.assign(p(), 0.0);
    s.counts.assign(static_cast<std::size_t>(offset_.back()), 0);
    return s;
}

void SimilarityModel::add(ClusterSummary& s, std::span<const double> x, std::span<const std::uint8_t> obs) const {
    ++s.size;
    for (std::size_t l = 0; l < p(); ++l) {
        if (!obs[l]) continue;
        ++s.n[l];
        if (kinds_[l] == CovariateKind::continuous)
            s.sum[l] += x[l];
        else
            ++s.counts[static_cast<std::size_t>(offset_[l] + static_cast<int>(x[l]))];
    }
}

void SimilarityModel::remove(ClusterSummary& s, std::span<const double> x, std::span<const std::uint8_t> obs) const {
    --s.size;
    for (std::size_t l = 0; l < p(); ++l) {
        if (!obs[l]) continue;
        --s.n[l];
        if (kinds_[l] == CovariateKind::continuous)
            s.sum[l] = s.n[l] == 0 ? 0.0 : s.sum[l] - x[l];
        else
            --s.counts[static_cast<std::size_t>(offset_[l] + static_cast<int>(x[l]))];
    }
}

double SimilarityModel::log_increment(const ClusterSummary& s, std::span<const double> x,
                                      std::span<const std::uint8_t> obs) const {
    double total = 0.0;
    for (std::size_t l = 0; l < p(); ++l) {
        if (!obs[l]) continue;
        if (kinds_[l] == CovariateKind::continuous) {
            total += continuous_increment(x[l], s.n[l], s.sum[l], v1_, mu0_, s0sq_);
        } else {
            const int count = s.counts[static_cast<std::size_t>(offset_[l] + static_cast<int>(x[l]))];
            total += std::log((alpha_ + count) / (n_levels_[l] * alpha_ + s.n[l]));
        }
    }
    return total;
}

std::vector<ClusterSummary> SimilarityModel::summarize(std::span<const int> labels, int k, const Dataset& data) const {
    std::vector<ClusterSummary> out(static_cast<std::size_t>(k), empty());
    for (std::size_t i = 0; i < labels.size(); ++i)
        add(out[static_cast<std::size_t>(labels[i])], data.x.row(i), data.observed.row(i));
    return out;
}

std::vector<double> allocation_log_weights(std::span<const ClusterSummary> clusters, std::span<const double> x,
                                           std::span<const std::uint8_t> obs, const SimilarityModel& model,
                                           double M, std::optional<std::span<const double>> likelihood) {
    if (likelihood && likelihood->size() != clusters.size() + 1)
        throw Error(ErrorCode::LengthMismatch, "likelihood terms must have k+1 entries");
    std::vector<double> w;
    w.reserve(clusters.size() + 1);
    for (const auto& s : clusters) w.push_back(std::log(static_cast<double>(s.size)) + model.log_increment(s, x, obs));
    w.push_back(std::log(M) + model.log_increment(model.empty(), x, obs));
    if (likelihood)
        for (std::size_t h = 0; h < w.size(); ++h) w[h] += (*likelihood)[h];
    return w;
}

std::vector<double> allocation_log_weights(std::span<const double> x, std::span<const std::uint8_t> obs,
                                           const std::vector<std::vector<std::size_t>>& clusters,
                                           const Dataset& data, const ModelConfig& config,
                                           std::optional<std::span<const double>> likelihood) {
    const SimilarityModel model(data, config);
    std::vector<ClusterSummary> summaries;
    summaries.reserve(clusters.size());
    for (const auto& members : clusters) {
        if (members.empty()) throw Error(ErrorCode::EmptyCluster, "conditioning partition has an empty cluster");
        auto s = model.empty();
        for (std::size_t i : members) model.add(s, data.x.row(i), data.observed.row(i));
        summaries.push_back(std::move(s));
    }
    return allocation_log_weights(summaries, x, obs, model, config.M, likelihood);
}

std::vector<double> normalize_log_weights(std::span<const double> log_weights) {
    std::vector<double> out(log_weights.begin(), log_weights.end());
    if (out.empty()) return out;
    const double top = *std::max_element(out.begin(), out.end());
    double total = 0.0;
    for (double& v : out) {
        v = std::exp(v - top);
        total += v;
    }
    for (double& v : out) v /= total;
    return out;
}

}  // namespace vdreg
