#include "vdreg/predict.hpp"

#include <cmath>

#include "vdreg/partition_prior.hpp"
#include "vdreg/random.hpp"

namespace vdreg {

namespace {

void check_schema(const Dataset& train, const Dataset& test) {
    if (train.p() != test.p() || train.kinds != test.kinds || train.n_levels != test.n_levels)
        throw Error(ErrorCode::SchemaMismatch, "test covariates do not match the training schema");
}

double mixture_prediction(std::span<const double> w, const PartitionState& draw, Family family) {
    const std::size_t k = draw.mu_star.size();
    double value = 0.0;
    if (family == Family::gaussian) {
        for (std::size_t h = 0; h < k; ++h) value += w[h] * draw.mu_star[h];
        value += w[k] * draw.mu0;
    } else {
        for (std::size_t h = 0; h < k; ++h) value += w[h] * normal_cdf(draw.mu_star[h]);
        value += w[k] * normal_cdf(draw.mu0 / std::sqrt(1.0 + draw.sigma0 * draw.sigma0));
    }
    return value;
}

}  // namespace

std::vector<double> predictive_weights(const PartitionState& draw, const Dataset& train, std::span<const double> x_new,
                                       std::span<const std::uint8_t> obs_new, const ModelConfig& config) {
    const SimilarityModel model(train, config);
    const auto summaries = model.summarize(draw.labels, draw.k(), train);
    return normalize_log_weights(allocation_log_weights(summaries, x_new, obs_new, model, config.M));
}

PredictionResult predict_point(const PosteriorDraws& draws, const Dataset& train, const Dataset& test,
                               const ModelConfig& config) {
    check_schema(train, test);
    if (draws.size() == 0) throw Error(ErrorCode::InvalidConfig, "no posterior draws");
    const SimilarityModel model(train, config);
    PredictionResult out;
    out.per_draw.reserve(draws.size());
    for (const auto& draw : draws.states) {
        const auto summaries = model.summarize(draw.labels, draw.k(), train);
        std::vector<double> row_pred(test.m());
        for (std::size_t r = 0; r < test.m(); ++r) {
            const auto w = normalize_log_weights(
                allocation_log_weights(summaries, test.x.row(r), test.observed.row(r), model, config.M));
            row_pred[r] = mixture_prediction(w, draw, config.family);
        }
        out.per_draw.push_back(std::move(row_pred));
    }
    const double t = static_cast<double>(draws.size());
    out.point.assign(test.m(), 0.0);
    out.sd.assign(test.m(), 0.0);
    for (const auto& row : out.per_draw)
        for (std::size_t r = 0; r < test.m(); ++r) out.point[r] += row[r];
    for (double& v : out.point) v /= t;
    if (draws.size() > 1) {
        for (const auto& row : out.per_draw)
            for (std::size_t r = 0; r < test.m(); ++r) out.sd[r] += (row[r] - out.point[r]) * (row[r] - out.point[r]);
        for (double& v : out.sd) v = std::sqrt(v / (t - 1.0));
    }
    return out;
}

std::vector<double> fitted_values(const PosteriorDraws& draws, const Dataset& train, Family family) {
    std::vector<double> fitted(train.m(), 0.0);
    if (draws.size() == 0) return fitted;
    for (const auto& draw : draws.states) {
        if (draw.labels.size() != train.m()) throw Error(ErrorCode::LengthMismatch, "draw does not match training rows");
        for (std::size_t i = 0; i < train.m(); ++i) {
            const double mu = draw.mu_star[static_cast<std::size_t>(draw.labels[i])];
            fitted[i] += family == Family::gaussian ? mu : normal_cdf(mu);
        }
    }
    for (double& v : fitted) v /= static_cast<double>(draws.size());
    return fitted;
}

}  // namespace vdreg
