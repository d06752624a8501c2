#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "vdreg/oracle.hpp"
#include "vdreg/partition_prior.hpp"

using namespace vdreg;
using vdreg::test::error_of;
using vdreg::test::make_data;
using vdreg::test::NA;

TEST_SUITE("oracle") {

TEST_CASE("enumeration gives Bell numbers of distinct restricted growth strings") {
    const std::vector<std::size_t> bell{1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975};
    for (int m = 1; m <= 10; ++m) {
        const auto parts = oracle::enumerate_partitions(m);
        CHECK(parts.size() == bell[static_cast<std::size_t>(m - 1)]);
        if (m <= 7) {
            std::set<oracle::Partition> uniq(parts.begin(), parts.end());
            CHECK(uniq.size() == parts.size());
            for (const auto& p : parts) CHECK(oracle::canonical(p) == p);
        }
    }
    CHECK(error_of([] { oracle::enumerate_partitions(11); }) == ErrorCode::TooLarge);
}

TEST_CASE("canonical relabels by first appearance") {
    CHECK(oracle::canonical(std::vector<int>{3, 3, 1, 0, 1}) == oracle::Partition{0, 0, 1, 2, 1});
}

TEST_CASE("exact prior is normalized and reduces to the CRP without covariates") {
    ModelConfig cfg;
    cfg.M = 1.5;
    auto d = make_data(std::vector<std::vector<double>>(4, std::vector<double>{}));
    const auto t = oracle::exact_prior(d, cfg);
    CHECK(std::accumulate(t.prob.begin(), t.prob.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    // all singletons: M^4 / (M (M+1) (M+2) (M+3))
    const double M = cfg.M;
    CHECK(t.prob[t.index_of(std::vector<int>{0, 1, 2, 3})] ==
          doctest::Approx(std::pow(M, 4) / (M * (M + 1) * (M + 2) * (M + 3))));
    CHECK(t.prob[t.index_of(std::vector<int>{0, 0, 0, 0})] == doctest::Approx(6.0 / (M + 1) / (M + 2) / (M + 3)));
}

TEST_CASE("oracle prior agrees with the main path") {
    auto d = make_data({{0.1, 1}, {NA, 0}, {1.4, NA}, {-0.7, 2}, {0.2, 0}},
                       {CovariateKind::continuous, CovariateKind::categorical}, {0, 3});
    ModelConfig cfg;
    for (const auto& part : oracle::enumerate_partitions(5))
        CHECK(log_partition_prior(part, d, cfg) ==
              doctest::Approx(oracle::log_prior_unnormalized(part, d, cfg)).epsilon(1e-12));
}

TEST_CASE("dense continuous marginal") {
    CHECK(oracle::dense_log_sim_continuous(std::vector<double>{0.0}, 0.5, 0.0, 1.0) ==
          doctest::Approx(-1.121671087258755).epsilon(1e-13));
    CHECK(oracle::dense_log_sim_continuous(std::vector<double>{0.0, 0.0}, 0.5, 0.0, 1.0) ==
          doctest::Approx(-1.9494488420664502).epsilon(1e-13));
    CHECK(oracle::loop_log_cohesion(5, 2.0) == doctest::Approx(std::log(2.0 * 24.0)));
}

TEST_CASE("exact posterior needs pins and a Gaussian family") {
    auto d = make_data({{0.0}, {1.0}}, {}, {}, std::vector<double>{0.0, 1.0});
    ModelConfig cfg;
    CHECK(error_of([&] { oracle::exact_posterior_fixed(d, cfg); }) == ErrorCode::MissingPins);
    cfg.fix = {0.0, 1.0, 0.25};
    const auto t = oracle::exact_posterior_fixed(d, cfg);
    CHECK(t.size() == 2);
    CHECK(std::accumulate(t.prob.begin(), t.prob.end(), 0.0) == doctest::Approx(1.0));
}

TEST_CASE("exact posterior, two units by hand") {
    // Together: y ~ N(0, s^2 I + 11'), apart: independent N(0, s^2 + 1).
    auto d = make_data({{NA}, {NA}}, {}, {}, std::vector<double>{0.3, -0.4});
    ModelConfig cfg;
    cfg.fix = {0.0, 1.0, 0.25};
    const double s2 = 0.0625, a = 0.3, b = -0.4;
    const double det = (s2 + 1) * (s2 + 1) - 1;
    const double quad = ((s2 + 1) * (a * a + b * b) - 2 * a * b) / det;
    const double log_together = -std::log(2 * std::numbers::pi) - 0.5 * std::log(det) - 0.5 * quad;
    const double log_apart = -std::log(2 * std::numbers::pi * (s2 + 1)) - 0.5 * (a * a + b * b) / (s2 + 1);
    // prior: together M*1! = 1, apart M^2 = 1
    const double p_together = 1.0 / (1.0 + std::exp(log_apart - log_together));
    const auto t = oracle::exact_posterior_fixed(d, cfg);
    CHECK(t.prob[t.index_of(std::vector<int>{0, 0})] == doctest::Approx(p_together).epsilon(1e-12));
}

TEST_CASE("total variation") {
    CHECK(oracle::total_variation(std::vector<double>{0.5, 0.5}, std::vector<double>{1.0, 0.0}) == doctest::Approx(0.5));
    CHECK(error_of([] { oracle::total_variation(std::vector<double>{1.0}, std::vector<double>{0.5, 0.5}); }) ==
          ErrorCode::LengthMismatch);
}

}  // TEST_SUITE
