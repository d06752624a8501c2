#include "vdreg/mcmc.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

namespace vdreg {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_normal_sd(double x, double mean, double sd) {
    const double d = (x - mean) / sd;
    return -0.5 * (kLog2Pi + d * d) - std::log(sd);
}

double response_loglik(const ModelConfig& config, double y, double mu, double sd) {
    if (config.family == Family::binary) return log_normal_cdf(y == 1.0 ? mu : -mu);
    return log_normal_sd(y, mu, sd);
}

void erase_cluster(PartitionState& s, std::vector<ClusterSummary>& summaries, int j) {
    summaries.erase(summaries.begin() + j);
    s.mu_star.erase(s.mu_star.begin() + j);
    s.sigma_star.erase(s.sigma_star.begin() + j);
    for (int& c : s.labels)
        if (c > j) --c;
}

}  // namespace

NormalMoments mu_star_conditional(int n, double sum, double noise_var, double mu0, double sigma0) {
    const double s0sq = sigma0 * sigma0;
    const double var = 1.0 / (n / noise_var + 1.0 / s0sq);
    return {var * (sum / noise_var + mu0 / s0sq), var};
}

NormalMoments mu0_conditional(std::span<const double> mu_star, double sigma0, double m0, double v_sq) {
    double sum = 0.0;
    for (double m : mu_star) sum += m;
    const double s0sq = sigma0 * sigma0;
    const double var = 1.0 / (static_cast<double>(mu_star.size()) / s0sq + 1.0 / v_sq);
    return {var * (sum / s0sq + m0 / v_sq), var};
}

double sigma_star_log_ratio(std::span<const double> values, double mu, double current, double proposal,
                            double upper) {
    if (!(proposal > 0.0 && proposal < upper)) return kNegInf;
    double r = 0.0;
    for (double y : values) r += log_normal_sd(y, mu, proposal) - log_normal_sd(y, mu, current);
    return r;
}

double sigma0_log_ratio(std::span<const double> mu_star, double mu0, double current, double proposal, double upper) {
    return sigma_star_log_ratio(mu_star, mu0, current, proposal, upper);
}

bool metropolis_accept(double log_ratio, double u) {
    if (log_ratio >= 0.0) return true;
    return std::log(u) < log_ratio;
}

PartitionState init_state(const Dataset& data, const ModelConfig& config, Rng& rng) {
    const std::size_t m = data.m();
    PartitionState s;
    s.labels.resize(m);
    s.mu_star.resize(m);
    s.sigma_star.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        s.labels[i] = static_cast<int>(i);
        s.mu_star[i] = config.family == Family::gaussian && data.y ? (*data.y)[i] : 0.0;
        if (config.family == Family::binary)
            s.sigma_star[i] = 1.0;
        else
            s.sigma_star[i] = config.fix.sigma_star ? *config.fix.sigma_star : rng.uniform(0.0, config.a_sigma);
    }
    s.mu0 = config.fix.mu0 ? *config.fix.mu0 : config.m0;
    s.sigma0 = config.fix.sigma0 ? *config.fix.sigma0 : rng.uniform(0.0, config.a_sigma0);
    if (config.family == Family::binary) s.z.assign(m, 0.0);
    return s;
}

void update_labels(PartitionState& s, const Dataset& data, const ModelConfig& config, Rng& rng) {
    const SimilarityModel model(data, config);
    auto summaries = model.summarize(s.labels, s.k(), data);
    const bool binary = config.family == Family::binary;
    std::vector<double> lik;
    for (std::size_t i = 0; i < data.m(); ++i) {
        const auto x = data.x.row(i);
        const auto obs = data.observed.row(i);
        const int old = s.labels[i];
        model.remove(summaries[static_cast<std::size_t>(old)], x, obs);
        double mu_new = 0.0, sd_new = 1.0;
        if (summaries[static_cast<std::size_t>(old)].size == 0) {
            // A singleton's own parameters become the auxiliary component.
            mu_new = s.mu_star[static_cast<std::size_t>(old)];
            sd_new = s.sigma_star[static_cast<std::size_t>(old)];
            erase_cluster(s, summaries, old);
        } else {
            mu_new = rng.normal(s.mu0, s.sigma0);
            if (!binary) sd_new = config.fix.sigma_star ? *config.fix.sigma_star : rng.uniform(0.0, config.a_sigma);
        }

        const std::size_t k = summaries.size();
        lik.assign(k + 1, 0.0);
        if (!config.flat_likelihood) {
            const double y = (*data.y)[i];
            for (std::size_t h = 0; h < k; ++h) lik[h] = response_loglik(config, y, s.mu_star[h], s.sigma_star[h]);
            lik[k] = response_loglik(config, y, mu_new, sd_new);
        }
        const auto logw = allocation_log_weights(summaries, x, obs, model, config.M, std::span<const double>(lik));
        const auto probs = normalize_log_weights(logw);
        const std::size_t h = rng.categorical(probs);
        if (h == k) {
            summaries.push_back(model.empty());
            s.mu_star.push_back(mu_new);
            s.sigma_star.push_back(sd_new);
        }
        s.labels[i] = static_cast<int>(h);
        model.add(summaries[h], x, obs);
    }
}

void update_mu_star(PartitionState& s, const Dataset& data, const ModelConfig& config, Rng& rng) {
    const bool binary = config.family == Family::binary;
    const auto k = static_cast<std::size_t>(s.k());
    std::vector<int> n(k, 0);
    std::vector<double> sum(k, 0.0);
    for (std::size_t i = 0; i < s.labels.size(); ++i) {
        const auto c = static_cast<std::size_t>(s.labels[i]);
        ++n[c];
        sum[c] += binary ? s.z[i] : (*data.y)[i];
    }
    for (std::size_t j = 0; j < k; ++j) {
        const double noise_var = binary ? 1.0 : s.sigma_star[j] * s.sigma_star[j];
        const auto c = mu_star_conditional(n[j], sum[j], noise_var, s.mu0, s.sigma0);
        s.mu_star[j] = rng.normal(c.mean, std::sqrt(c.var));
    }
}

void update_sigma_star(PartitionState& s, const Dataset& data, const ModelConfig& config, Rng& rng,
                       AcceptanceCounts& counts) {
    if (config.family != Family::gaussian || config.fix.sigma_star) return;
    const auto k = static_cast<std::size_t>(s.k());
    std::vector<std::vector<double>> members(k);
    for (std::size_t i = 0; i < s.labels.size(); ++i)
        members[static_cast<std::size_t>(s.labels[i])].push_back((*data.y)[i]);
    for (std::size_t j = 0; j < k; ++j) {
        const double proposal = s.sigma_star[j] + config.mcmc.step_sigma_star * rng.normal();
        const double r = sigma_star_log_ratio(members[j], s.mu_star[j], s.sigma_star[j], proposal, config.a_sigma);
        ++counts.sigma_star_proposed;
        if (r == kNegInf) continue;
        if (metropolis_accept(r, rng.uniform())) {
            s.sigma_star[j] = proposal;
            ++counts.sigma_star_accepted;
        }
    }
}

void update_hyper(PartitionState& s, const ModelConfig& config, Rng& rng, AcceptanceCounts& counts) {
    if (!config.fix.mu0) {
        const auto c = mu0_conditional(s.mu_star, s.sigma0, config.m0, config.v_sq);
        s.mu0 = rng.normal(c.mean, std::sqrt(c.var));
    }
    if (!config.fix.sigma0) {
        const double proposal = s.sigma0 + config.mcmc.step_sigma0 * rng.normal();
        const double r = sigma0_log_ratio(s.mu_star, s.mu0, s.sigma0, proposal, config.a_sigma0);
        ++counts.sigma0_proposed;
        if (r != kNegInf && metropolis_accept(r, rng.uniform())) {
            s.sigma0 = proposal;
            ++counts.sigma0_accepted;
        }
    }
}

void update_latent_probit(PartitionState& s, const Dataset& data, Rng& rng) {
    s.z.resize(s.labels.size());
    for (std::size_t i = 0; i < s.labels.size(); ++i) {
        const double mu = s.mu_star[static_cast<std::size_t>(s.labels[i])];
        s.z[i] = rng.truncated_unit_normal(mu, (*data.y)[i] == 1.0);
    }
}

void sweep(PartitionState& s, const Dataset& data, const ModelConfig& config, Rng& rng, AcceptanceCounts& counts) {
    update_labels(s, data, config, rng);
    if (config.family == Family::binary) update_latent_probit(s, data, rng);
    update_mu_star(s, data, config, rng);
    update_sigma_star(s, data, config, rng, counts);
    update_hyper(s, config, rng, counts);
}

ChainResult run_chain(const Dataset& data, const ModelConfig& config, std::uint64_t stream) {
    validate(data, config);
    if (!data.y) throw Error(ErrorCode::BadOutcome, "fitting needs a response column");
    const auto start = std::chrono::steady_clock::now();
    Rng rng(config.mcmc.seed, stream);
    ChainResult out;
    auto state = init_state(data, config, rng);
    const auto& sched = config.mcmc;
    out.draws.states.reserve(static_cast<std::size_t>(sched.retained()));
    for (int t = 1; t <= sched.iterations; ++t) {
        sweep(state, data, config, rng, out.diagnostics.acceptance);
        check_state(state, config);
        if (t > sched.burn_in && (t - sched.burn_in) % sched.thin == 0) {
            out.draws.states.push_back(state);
            out.draws.acceptance.push_back(out.diagnostics.acceptance);
        }
    }
    out.diagnostics.retained = static_cast<int>(out.draws.size());
    out.diagnostics.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

}  // namespace vdreg
