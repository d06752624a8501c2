#include "vdreg/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vdreg {

std::string to_string(MissingType type) { return type == MissingType::mar ? "mar" : "mnar"; }

MissingType parse_missing_type(const std::string& text) {
    if (text == "mar") return MissingType::mar;
    if (text == "mnar") return MissingType::mnar;
    throw Error(ErrorCode::InvalidScenario, "missing type must be mar or mnar, got '" + text + "'");
}

void validate_scenario(const Scenario& s) {
    if (s.p < 1) throw Error(ErrorCode::InvalidScenario, "p must be >= 1");
    if (s.n_per_cluster < 1) throw Error(ErrorCode::InvalidScenario, "n_per_cluster must be >= 1");
    if (!(s.cluster_noise > 0)) throw Error(ErrorCode::InvalidScenario, "cluster noise must be positive");
    if (!(s.missing_frac >= 0 && s.missing_frac < 1)) throw Error(ErrorCode::InvalidScenario, "missing fraction outside [0,1)");
    if (s.unchecked) return;
    auto in = [](double v, std::initializer_list<double> set) {
        return std::any_of(set.begin(), set.end(), [v](double a) { return std::abs(a - v) < 1e-12; });
    };
    if (s.p != 2 && s.p != 4 && s.p != 10) throw Error(ErrorCode::InvalidScenario, "p must be 2, 4 or 10");
    if (!in(s.cluster_noise, {0.25, 0.5, 0.75})) throw Error(ErrorCode::InvalidScenario, "noise must be 0.25, 0.5 or 0.75");
    if (!in(s.missing_frac, {0.0, 0.10, 0.25, 0.50}))
        throw Error(ErrorCode::InvalidScenario, "missing fraction must be 0, 0.1, 0.25 or 0.5");
}

std::vector<double> cluster_mean(int j, int p) {
    std::vector<double> m(static_cast<std::size_t>(p));
    for (int l = 0; l < p; ++l) {
        const bool even = l % 2 == 0;
        switch (j) {
            case 0: m[static_cast<std::size_t>(l)] = 1.0; break;
            case 1: m[static_cast<std::size_t>(l)] = even ? 1.0 : -1.0; break;
            case 2: m[static_cast<std::size_t>(l)] = even ? -1.0 : 1.0; break;
            default: m[static_cast<std::size_t>(l)] = -1.0; break;
        }
    }
    return m;
}

SimulatedCovariates gen_covariates(const Scenario& s, Rng& rng) {
    validate_scenario(s);
    const auto n = static_cast<std::size_t>(s.n_per_cluster);
    SimulatedCovariates out{Matrix<double>(4 * n, static_cast<std::size_t>(s.p)), {}};
    out.labels.reserve(4 * n);
    for (int j = 0; j < 4; ++j) {
        const auto mean = cluster_mean(j, s.p);
        for (std::size_t r = 0; r < n; ++r) {
            const std::size_t i = static_cast<std::size_t>(j) * n + r;
            for (std::size_t l = 0; l < mean.size(); ++l) out.x(i, l) = rng.normal(mean[l], s.cluster_noise);
            out.labels.push_back(j);
        }
    }
    return out;
}

std::vector<double> gen_responses(const std::vector<int>& labels, bool heteroscedastic, Rng& rng) {
    std::vector<double> y;
    y.reserve(labels.size());
    for (int c : labels) {
        const auto j = static_cast<std::size_t>(c);
        y.push_back(rng.normal(kClusterMeans[j], heteroscedastic ? kHeteroSd[j] : kHomoSd));
    }
    return y;
}

namespace {

double logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }

}  // namespace

double mnar_intercept(const std::vector<double>& z, double frac) {
    auto mean_prob = [&](double b) {
        double acc = 0.0;
        for (double v : z) acc += logistic(v + b);
        return acc / static_cast<double>(z.size());
    };
    double lo = -60.0, hi = 60.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (mean_prob(mid) < frac ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Matrix<std::uint8_t> ampute(const Matrix<double>& x, MissingType type, double frac, Rng& rng) {
    if (!(frac >= 0 && frac < 1)) throw Error(ErrorCode::InvalidScenario, "missing fraction outside [0,1)");
    Matrix<std::uint8_t> out(x.rows(), x.cols(), 1);
    if (frac == 0.0 || x.rows() == 0) return out;
    for (std::size_t l = 0; l < x.cols(); ++l) {
        if (type == MissingType::mar) {
            for (std::size_t i = 0; i < x.rows(); ++i)
                if (rng.bernoulli(frac)) out(i, l) = 0;
            continue;
        }
        double mean = 0.0;
        for (std::size_t i = 0; i < x.rows(); ++i) mean += x(i, l);
        mean /= static_cast<double>(x.rows());
        double ss = 0.0;
        for (std::size_t i = 0; i < x.rows(); ++i) ss += (x(i, l) - mean) * (x(i, l) - mean);
        const double sd = x.rows() > 1 ? std::sqrt(ss / static_cast<double>(x.rows() - 1)) : 0.0;
        std::vector<double> z(x.rows());
        for (std::size_t i = 0; i < x.rows(); ++i) z[i] = sd > 0 ? (x(i, l) - mean) / sd : 0.0;
        const double b = mnar_intercept(z, frac);
        for (std::size_t i = 0; i < x.rows(); ++i)
            if (rng.bernoulli(logistic(z[i] + b))) out(i, l) = 0;
    }
    return out;
}

namespace {

Dataset assemble(const Matrix<double>& x, const Matrix<std::uint8_t>& observed, const std::vector<double>& y) {
    Dataset d;
    d.x = x;
    d.observed = observed;
    d.y = y;
    d.kinds.assign(x.cols(), CovariateKind::continuous);
    d.n_levels.assign(x.cols(), 0);
    for (std::size_t l = 0; l < x.cols(); ++l) d.names.push_back("x" + std::to_string(l + 1));
    poison_masked(d, std::nan(""));
    return d;
}

}  // namespace

ScenarioData make_scenario_datasets(const Scenario& s) {
    validate_scenario(s);
    Rng rng(s.seed);
    auto cov = gen_covariates(s, rng);
    const auto y = gen_responses(cov.labels, s.heteroscedastic, rng);
    const auto amp = ampute(cov.x, s.missing_type, s.missing_frac, rng);
    const Dataset full = assemble(cov.x, amp, y);

    std::vector<std::size_t> order(full.m());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng.engine());
    const std::size_t half = full.m() / 2;
    ScenarioData out;
    out.train_rows.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(half));
    out.test_rows.assign(order.begin() + static_cast<std::ptrdiff_t>(half), order.end());
    std::sort(out.train_rows.begin(), out.train_rows.end());
    std::sort(out.test_rows.begin(), out.test_rows.end());
    out.train = full.subset(out.train_rows);
    out.test = full.subset(out.test_rows);
    for (auto i : out.train_rows) out.train_labels.push_back(cov.labels[i]);
    for (auto i : out.test_rows) out.test_labels.push_back(cov.labels[i]);
    return out;
}

Dataset make_binary_dataset(int n_per_cluster, int p, double noise, double mu, std::uint64_t seed) {
    Rng rng(seed);
    const auto n = static_cast<std::size_t>(n_per_cluster);
    Matrix<double> x(2 * n, static_cast<std::size_t>(p));
    std::vector<double> y;
    for (std::size_t i = 0; i < 2 * n; ++i) {
        const double sign = i < n ? 1.0 : -1.0;
        for (std::size_t l = 0; l < x.cols(); ++l) x(i, l) = rng.normal(sign, noise);
        y.push_back(rng.bernoulli(normal_cdf(sign * mu)) ? 1.0 : 0.0);
    }
    return assemble(x, Matrix<std::uint8_t>(2 * n, x.cols(), 1), y);
}

}  // namespace vdreg
