#include "vdreg/types.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace vdreg {

std::string_view error_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::EmptyCovariate: return "EmptyCovariate";
        case ErrorCode::BadOutcome: return "BadOutcome";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::BadLevel: return "BadLevel";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::EmptyCluster: return "EmptyCluster";
        case ErrorCode::LabelGap: return "LabelGap";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::Degenerate: return "Degenerate";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::MissingPins: return "MissingPins";
        case ErrorCode::InvalidScenario: return "InvalidScenario";
        case ErrorCode::SchemaMismatch: return "SchemaMismatch";
        case ErrorCode::NoCompleteCases: return "NoCompleteCases";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::InvariantBreach: return "InvariantBreach";
    }
    return "Unknown";
}

std::string to_string(CovariateKind kind) {
    return kind == CovariateKind::continuous ? "continuous" : "categorical";
}

std::string to_string(Family family) {
    return family == Family::gaussian ? "gaussian" : "binary";
}

CovariateKind parse_kind(const std::string& text) {
    if (text == "continuous") return CovariateKind::continuous;
    if (text == "categorical") return CovariateKind::categorical;
    throw Error(ErrorCode::InvalidConfig, "unknown covariate kind '" + text + "'");
}

Family parse_family(const std::string& text) {
    if (text == "gaussian") return Family::gaussian;
    if (text == "binary") return Family::binary;
    throw Error(ErrorCode::InvalidConfig, "unknown family '" + text + "'");
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
    Dataset out;
    out.kinds = kinds;
    out.n_levels = n_levels;
    out.names = names;
    out.x = Matrix<double>(rows.size(), p());
    out.observed = Matrix<std::uint8_t>(rows.size(), p());
    if (y) out.y.emplace();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const std::size_t i = rows[r];
        for (std::size_t l = 0; l < p(); ++l) {
            out.x(r, l) = x(i, l);
            out.observed(r, l) = observed(i, l);
        }
        if (y) out.y->push_back((*y)[i]);
    }
    return out;
}

void poison_masked(Dataset& data, double value) {
    for (std::size_t i = 0; i < data.m(); ++i)
        for (std::size_t l = 0; l < data.p(); ++l)
            if (!data.is_observed(i, l)) data.x(i, l) = value;
}

void validate_config(const ModelConfig& c) {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw Error(ErrorCode::InvalidConfig, what);
    };
    require(c.M > 0, "M must be positive");
    require(c.sim_v1 > 0, "sim_v1 must be positive");
    require(c.sim_s0sq > 0, "sim_s0sq must be positive");
    require(c.sim_alpha > 0, "sim_alpha must be positive");
    require(c.v_sq > 0, "v_sq must be positive");
    require(c.a_sigma > 0, "a_sigma must be positive");
    require(c.a_sigma0 > 0, "a_sigma0 must be positive");
    require(c.mcmc.iterations > 0, "iterations must be positive");
    require(c.mcmc.burn_in >= 0 && c.mcmc.burn_in < c.mcmc.iterations,
            "burn-in must be in [0, iterations)");
    require(c.mcmc.thin >= 1, "thinning must be >= 1");
    require(c.mcmc.step_sigma_star > 0 && c.mcmc.step_sigma0 > 0, "proposal steps must be positive");
    if (c.fix.sigma_star)
        require(*c.fix.sigma_star > 0 && *c.fix.sigma_star < c.a_sigma, "fixed sigma_star outside (0, a_sigma)");
    if (c.fix.sigma0)
        require(*c.fix.sigma0 > 0 && *c.fix.sigma0 < c.a_sigma0, "fixed sigma0 outside (0, a_sigma0)");
}

void validate(const Dataset& d, const ModelConfig& config) {
    validate_config(config);
    if (d.m() < 1) throw Error(ErrorCode::ShapeMismatch, "dataset has no rows");
    if (d.observed.rows() != d.x.rows() || d.observed.cols() != d.x.cols()) {
        std::ostringstream os;
        os << "mask is " << d.observed.rows() << "x" << d.observed.cols() << " but x is " << d.x.rows()
           << "x" << d.x.cols();
        throw Error(ErrorCode::ShapeMismatch, os.str());
    }
    if (d.kinds.size() != d.p() || d.n_levels.size() != d.p())
        throw Error(ErrorCode::ShapeMismatch, "covariate kind list does not match column count");
    if (d.y && d.y->size() != d.m()) throw Error(ErrorCode::ShapeMismatch, "response length differs from row count");
    if (d.y && config.family == Family::binary) {
        for (std::size_t i = 0; i < d.m(); ++i) {
            const double v = (*d.y)[i];
            if (v != 0.0 && v != 1.0)
                throw Error(ErrorCode::BadOutcome, "binary family needs y in {0,1}; row " + std::to_string(i + 1));
        }
    }
    if (d.y && config.family == Family::gaussian) {
        for (std::size_t i = 0; i < d.m(); ++i)
            if (!std::isfinite((*d.y)[i]))
                throw Error(ErrorCode::BadOutcome, "non-finite response at row " + std::to_string(i + 1));
    }
    for (std::size_t l = 0; l < d.p(); ++l) {
        if (d.kinds[l] != CovariateKind::categorical) continue;
        if (d.n_levels[l] < 1)
            throw Error(ErrorCode::BadLevel, "categorical covariate " + std::to_string(l + 1) + " needs n_levels >= 1");
        for (std::size_t i = 0; i < d.m(); ++i) {
            if (!d.is_observed(i, l)) continue;
            const double v = d.x(i, l);
            if (v != std::floor(v) || v < 0 || v >= d.n_levels[l]) {
                std::ostringstream os;
                os << "level " << v << " out of range at row " << i + 1 << ", column " << l + 1;
                throw Error(ErrorCode::BadLevel, os.str());
            }
        }
    }
}

std::vector<int> PartitionState::cluster_sizes() const {
    std::vector<int> sizes(mu_star.size(), 0);
    for (int c : labels) ++sizes.at(static_cast<std::size_t>(c));
    return sizes;
}

void check_state(const PartitionState& s, const ModelConfig& config) {
    const int k = s.k();
    if (k > static_cast<int>(s.labels.size()) || s.sigma_star.size() != s.mu_star.size())
        throw Error(ErrorCode::InvariantBreach, "cluster count exceeds unit count");
    std::vector<int> sizes(static_cast<std::size_t>(k), 0);
    for (int c : s.labels) {
        if (c < 0 || c >= k) throw Error(ErrorCode::InvariantBreach, "label outside 0..k-1");
        ++sizes[static_cast<std::size_t>(c)];
    }
    for (int n : sizes)
        if (n == 0) throw Error(ErrorCode::InvariantBreach, "empty cluster in state");
    if (config.family == Family::gaussian)
        for (double sd : s.sigma_star)
            if (!(sd > 0 && sd < config.a_sigma)) throw Error(ErrorCode::InvariantBreach, "sigma_star out of support");
    if (!(s.sigma0 > 0 && s.sigma0 < config.a_sigma0))
        throw Error(ErrorCode::InvariantBreach, "sigma0 out of support");
}

double AcceptanceCounts::sigma_star_rate() const noexcept {
    return sigma_star_proposed ? static_cast<double>(sigma_star_accepted) / sigma_star_proposed : 0.0;
}

double AcceptanceCounts::sigma0_rate() const noexcept {
    return sigma0_proposed ? static_cast<double>(sigma0_accepted) / sigma0_proposed : 0.0;
}

Standardization fit_standardization(const Dataset& train) {
    Standardization t;
    t.center.assign(train.p(), 0.0);
    t.scale.assign(train.p(), 1.0);
    for (std::size_t l = 0; l < train.p(); ++l) {
        if (train.kinds[l] != CovariateKind::continuous) continue;
        double sum = 0.0;
        std::size_t n = 0;
        for (std::size_t i = 0; i < train.m(); ++i)
            if (train.is_observed(i, l)) {
                sum += train.x(i, l);
                ++n;
            }
        if (n == 0) {
            const std::string name = l < train.names.size() ? train.names[l] : std::to_string(l + 1);
            throw Error(ErrorCode::EmptyCovariate, "continuous covariate '" + name + "' has no observed training entries");
        }
        const double mean = sum / static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t i = 0; i < train.m(); ++i)
            if (train.is_observed(i, l)) ss += (train.x(i, l) - mean) * (train.x(i, l) - mean);
        const double sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
        t.center[l] = mean;
        t.scale[l] = sd > 0.0 ? sd : 1.0;
    }
    return t;
}

Dataset Standardization::apply(const Dataset& data) const {
    if (data.p() != center.size()) throw Error(ErrorCode::SchemaMismatch, "transform/column count mismatch");
    Dataset out = data;
    for (std::size_t i = 0; i < out.m(); ++i)
        for (std::size_t l = 0; l < out.p(); ++l)
            if (out.is_observed(i, l) && out.kinds[l] == CovariateKind::continuous)
                out.x(i, l) = (data.x(i, l) - center[l]) / scale[l];
    return out;
}

Dataset Standardization::invert(const Dataset& data) const {
    if (data.p() != center.size()) throw Error(ErrorCode::SchemaMismatch, "transform/column count mismatch");
    Dataset out = data;
    for (std::size_t i = 0; i < out.m(); ++i)
        for (std::size_t l = 0; l < out.p(); ++l)
            if (out.is_observed(i, l) && out.kinds[l] == CovariateKind::continuous)
                out.x(i, l) = data.x(i, l) * scale[l] + center[l];
    return out;
}

Standardized standardize(const Dataset& train, const std::vector<Dataset>& others) {
    Standardized out;
    out.transform = fit_standardization(train);
    out.train = out.transform.apply(train);
    out.others.reserve(others.size());
    for (const auto& d : others) {
        if (d.p() != train.p() || d.kinds != train.kinds)
            throw Error(ErrorCode::SchemaMismatch, "covariate schema differs from training data");
        out.others.push_back(out.transform.apply(d));
    }
    return out;
}

}  // namespace vdreg
