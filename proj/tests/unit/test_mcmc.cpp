#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "vdreg/mcmc.hpp"
#include "vdreg/oracle.hpp"
#include "vdreg/simgen.hpp"

using namespace vdreg;
using vdreg::test::error_of;
using vdreg::test::make_data;
using vdreg::test::NA;
using vdreg::test::short_chain;

namespace {

// Posterior moments of a scalar parameter by brute-force grid integration of
// prior x likelihood (both given as log densities).
template <typename LogPost>
NormalMoments grid_moments(LogPost lp, double lo, double hi, int n = 200000) {
    const double h = (hi - lo) / n;
    double max_lp = -1e300;
    for (int i = 0; i <= n; ++i) max_lp = std::max(max_lp, lp(lo + i * h));
    double w = 0.0, m1 = 0.0, m2 = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double t = lo + i * h;
        const double e = std::exp(lp(t) - max_lp);
        w += e;
        m1 += e * t;
        m2 += e * t * t;
    }
    const double mean = m1 / w;
    return {mean, m2 / w - mean * mean};
}

double log_norm(double x, double mean, double sd) {
    return -0.5 * std::log(2 * std::numbers::pi) - std::log(sd) - 0.5 * (x - mean) * (x - mean) / (sd * sd);
}

}  // namespace

TEST_SUITE("mcmc") {

TEST_CASE("mu_star full conditional matches a gridded posterior") {
    const std::vector<double> ys{0.4, -0.1, 0.9};
    const double sd = 0.3, mu0 = 0.2, sigma0 = 1.3;
    const auto g = grid_moments(
        [&](double mu) {
            double lp = log_norm(mu, mu0, sigma0);
            for (double y : ys) lp += log_norm(y, mu, sd);
            return lp;
        },
        -6, 6);
    const auto c = mu_star_conditional(3, 0.4 - 0.1 + 0.9, sd * sd, mu0, sigma0);
    CHECK(c.mean == doctest::Approx(g.mean).epsilon(1e-8));
    CHECK(c.var == doctest::Approx(g.var).epsilon(1e-6));
}

TEST_CASE("mu0 full conditional matches a gridded posterior") {
    const std::vector<double> mus{-1.0, -0.5, 0.3, 0.5};
    const double sigma0 = 0.7, m0 = 0.5, v_sq = 2.0;
    const auto g = grid_moments(
        [&](double t) {
            double lp = log_norm(t, m0, std::sqrt(v_sq));
            for (double m : mus) lp += log_norm(m, t, sigma0);
            return lp;
        },
        -8, 8);
    const auto c = mu0_conditional(mus, sigma0, m0, v_sq);
    CHECK(c.mean == doctest::Approx(g.mean).epsilon(1e-8));
    CHECK(c.var == doctest::Approx(g.var).epsilon(1e-6));
}

TEST_CASE("scale log ratio and support") {
    const std::vector<double> ys{0.1, 0.5};
    const double r = sigma_star_log_ratio(ys, 0.2, 0.5, 0.3, 10.0);
    double expect = 0.0;
    for (double y : ys) expect += log_norm(y, 0.2, 0.3) - log_norm(y, 0.2, 0.5);
    CHECK(r == doctest::Approx(expect).epsilon(1e-12));
    CHECK(std::isinf(sigma_star_log_ratio(ys, 0.2, 0.5, -0.1, 10.0)));
    CHECK(std::isinf(sigma_star_log_ratio(ys, 0.2, 0.5, 10.0, 10.0)));
    CHECK(std::isinf(sigma0_log_ratio(ys, 0.0, 1.0, 0.0, 10.0)));
    CHECK(metropolis_accept(0.0, 0.999));
    CHECK(!metropolis_accept(-std::numeric_limits<double>::infinity(), 1e-300));
    CHECK(metropolis_accept(std::log(0.5), 0.49));
    CHECK(!metropolis_accept(std::log(0.5), 0.51));
}

TEST_CASE("init state is all singletons") {
    auto d = make_data({{0.0}, {1.0}, {2.0}}, {}, {}, std::vector<double>{1, 2, 3});
    ModelConfig cfg;
    Rng rng(1);
    const auto s = init_state(d, cfg, rng);
    CHECK(s.k() == 3);
    CHECK(s.labels == std::vector<int>{0, 1, 2});
    CHECK_NOTHROW(check_state(s, cfg));
}

TEST_CASE("chain is seed-deterministic and keeps invariants") {
    ScenarioData sd = make_scenario_datasets({.p = 2, .missing_frac = 0.25, .seed = 5});
    auto cfg = short_chain(600, 300, 10);
    const auto a = run_chain(sd.train, cfg, 0);
    const auto b = run_chain(sd.train, cfg, 0);
    const auto c = run_chain(sd.train, cfg, 1);
    REQUIRE(a.draws.size() == 30);
    CHECK(a.diagnostics.retained == 30);
    bool differs = false;
    for (std::size_t t = 0; t < a.draws.size(); ++t) {
        CHECK(a.draws.states[t].labels == b.draws.states[t].labels);
        CHECK(a.draws.states[t].mu_star == b.draws.states[t].mu_star);
        CHECK(a.draws.states[t].mu0 == b.draws.states[t].mu0);
        CHECK_NOTHROW(check_state(a.draws.states[t], cfg));
        differs = differs || a.draws.states[t].mu_star != c.draws.states[t].mu_star;
    }
    CHECK(differs);
    CHECK(a.diagnostics.acceptance.sigma0_proposed == 600);
}

TEST_CASE("pinned hyperparameters stay fixed") {
    auto d = make_data({{0.0}, {0.1}, {3.0}, {3.1}}, {}, {}, std::vector<double>{-1, -1.1, 1, 1.2});
    auto cfg = short_chain(400, 100, 3);
    cfg.fix = {0.5, 1.5, 0.25};
    const auto r = run_chain(d, cfg);
    for (const auto& s : r.draws.states) {
        CHECK(s.mu0 == 0.5);
        CHECK(s.sigma0 == 1.5);
        for (double v : s.sigma_star) CHECK(v == 0.25);
    }
    CHECK(r.diagnostics.acceptance.sigma0_proposed == 0);
    CHECK(r.diagnostics.acceptance.sigma_star_proposed == 0);
}

TEST_CASE("well separated responses and covariates split into two clusters") {
    std::vector<std::vector<double>> rows;
    std::vector<double> y;
    for (int i = 0; i < 10; ++i) {
        rows.push_back({-2.0 + 0.01 * i});
        y.push_back(-2.0 + 0.02 * i);
    }
    for (int i = 0; i < 10; ++i) {
        rows.push_back({2.0 + 0.01 * i});
        y.push_back(2.0 + 0.02 * i);
    }
    auto cfg = short_chain(3000, 1000, 10);
    const auto r = run_chain(make_data(rows, {}, {}, y), cfg);
    int two = 0;
    for (const auto& s : r.draws.states) two += s.k() == 2;
    CHECK(two > static_cast<int>(r.draws.size()) * 7 / 10);
}

TEST_CASE("label sampler reproduces a small exact posterior") {
    // Singletons are the sensitive case: their parameters must carry over as
    // the auxiliary component.
    auto d = make_data({{-1.0}, {0.0}, {NA}, {1.1}}, {}, {}, std::vector<double>{-0.5, 0.1, 0.3, 1.0});
    auto cfg = short_chain(41000, 1000, 1, 3);
    cfg.fix = {0.0, 1.0, 0.25};
    const auto r = run_chain(d, cfg);
    const auto t = oracle::exact_posterior_fixed(d, cfg);
    std::vector<double> freq(t.size(), 0.0);
    for (const auto& s : r.draws.states) freq[t.index_of(oracle::canonical(s.labels))] += 1.0 / r.draws.size();
    CHECK(oracle::total_variation(freq, t.prob) < 0.03);
}

TEST_CASE("binary chain keeps latent scores consistent with outcomes") {
    const auto d = make_binary_dataset(20, 1, 0.25, 1.5, 3);
    auto cfg = short_chain(500, 100, 10);
    cfg.family = Family::binary;
    const auto r = run_chain(d, cfg);
    for (const auto& s : r.draws.states) {
        REQUIRE(s.z.size() == d.m());
        for (std::size_t i = 0; i < d.m(); ++i) CHECK(((*d.y)[i] == 1.0) == (s.z[i] > 0));
        for (double v : s.sigma_star) CHECK(v == 1.0);
    }
    CHECK(r.diagnostics.acceptance.sigma_star_proposed == 0);
}

TEST_CASE("chain input errors") {
    auto d = make_data({{0.0}, {1.0}});
    CHECK(error_of([&] { run_chain(d, short_chain()); }) == ErrorCode::BadOutcome);
    d.y = std::vector<double>{0.0, 2.0};
    auto cfg = short_chain();
    cfg.family = Family::binary;
    CHECK(error_of([&] { run_chain(d, cfg); }) == ErrorCode::BadOutcome);
}

}  // TEST_SUITE

TEST_SUITE("random") {

TEST_CASE("truncated normal moments") {
    Rng rng(11);
    const int n = 200000;
    double pos = 0.0, neg = 0.0, shifted = 0.0, tail = 0.0;
    for (int i = 0; i < n; ++i) {
        const double a = rng.truncated_unit_normal(0.0, true);
        CHECK_FALSE(a <= 0.0);
        pos += a;
        neg += rng.truncated_unit_normal(0.0, false);
        shifted += rng.truncated_unit_normal(1.0, true);
        tail += rng.truncated_unit_normal(-4.0, true);
    }
    const double root = std::sqrt(2.0 / std::numbers::pi);
    CHECK(pos / n == doctest::Approx(root).epsilon(0.01));
    CHECK(neg / n == doctest::Approx(-root).epsilon(0.01));
    auto phi = [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2 * std::numbers::pi); };
    CHECK(shifted / n == doctest::Approx(1.0 + phi(1.0) / normal_cdf(1.0)).epsilon(0.01));
    // N(-4,1) | > 0 : mean -4 + phi(4) / (1 - Phi(4))
    CHECK(tail / n == doctest::Approx(-4.0 + phi(4.0) / normal_cdf(-4.0)).epsilon(0.01));
}

TEST_CASE("normal cdf") {
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
    CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
    CHECK(log_normal_cdf(-40.0) == doctest::Approx(-804.6084420137538).epsilon(1e-6));
    CHECK(log_normal_cdf(-5.0) == doctest::Approx(std::log(normal_cdf(-5.0))).epsilon(1e-12));
}

TEST_CASE("streams are independent and reproducible") {
    Rng a(1, 0), b(1, 0), c(1, 1);
    CHECK(a.uniform() == b.uniform());
    CHECK(a.uniform() != c.uniform());
    Rng r(3);
    std::vector<int> hits(3, 0);
    const std::vector<double> probs{0.2, 0.5, 0.3};
    for (int i = 0; i < 100000; ++i) ++hits[r.categorical(probs)];
    CHECK(hits[1] / 100000.0 == doctest::Approx(0.5).epsilon(0.02));
}

}  // TEST_SUITE
