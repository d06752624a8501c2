#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "vdreg/types.hpp"

using namespace vdreg;
using vdreg::test::error_of;
using vdreg::test::make_data;
using vdreg::test::NA;

TEST_SUITE("types") {

TEST_CASE("standardize centers and scales observed training entries") {
    auto train = make_data({{1.0, 10.0}, {2.0, NA}, {3.0, 30.0}});
    auto test = make_data({{4.0, 20.0}});
    const auto st = standardize(train, {test});
    CHECK(st.transform.center[0] == doctest::Approx(2.0));
    CHECK(st.transform.scale[0] == doctest::Approx(1.0));
    CHECK(st.transform.center[1] == doctest::Approx(20.0));
    CHECK(st.transform.scale[1] == doctest::Approx(std::sqrt(200.0)));
    CHECK(st.train.x(0, 0) == doctest::Approx(-1.0));
    CHECK(st.train.x(2, 0) == doctest::Approx(1.0));
    CHECK(!st.train.is_observed(1, 1));
    CHECK(st.others[0].x(0, 0) == doctest::Approx(2.0));
    CHECK(st.others[0].x(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("standardize round trip") {
    auto d = make_data({{0.3, -2.0}, {5.5, 1.0}, {NA, 4.0}, {-1.2, NA}});
    const auto t = fit_standardization(d);
    const auto back = t.invert(t.apply(d));
    for (std::size_t i = 0; i < d.m(); ++i)
        for (std::size_t l = 0; l < d.p(); ++l)
            if (d.is_observed(i, l)) CHECK(back.x(i, l) == doctest::Approx(d.x(i, l)).epsilon(1e-14));
    CHECK(back.observed == d.observed);
}

TEST_CASE("constant column gets unit scale; categorical columns are untouched") {
    auto d = make_data({{2.0, 1}, {2.0, 0}, {2.0, 2}}, {CovariateKind::continuous, CovariateKind::categorical},
                       {0, 3});
    const auto t = fit_standardization(d);
    CHECK(t.scale[0] == 1.0);
    CHECK(t.center[1] == 0.0);
    CHECK(t.scale[1] == 1.0);
    const auto s = t.apply(d);
    CHECK(s.x(0, 0) == 0.0);
    CHECK(s.x(2, 1) == 2.0);
}

TEST_CASE("standardize errors") {
    auto d = make_data({{NA, 1.0}, {NA, 2.0}});
    CHECK(error_of([&] { fit_standardization(d); }) == ErrorCode::EmptyCovariate);
    auto a = make_data({{1.0}, {2.0}});
    auto b = make_data({{1.0}}, {CovariateKind::categorical}, {2});
    CHECK(error_of([&] { standardize(a, {b}); }) == ErrorCode::SchemaMismatch);
}

TEST_CASE("validate") {
    ModelConfig cfg;
    auto d = make_data({{0.0}, {1.0}}, {}, {}, std::vector<double>{0.5, 1.0});
    CHECK_NOTHROW(validate(d, cfg));
    cfg.family = Family::binary;
    CHECK(error_of([&] { validate(d, cfg); }) == ErrorCode::BadOutcome);
    d.y = std::vector<double>{0.0, 1.0};
    CHECK_NOTHROW(validate(d, cfg));
    d.y = std::vector<double>{0.0};
    CHECK(error_of([&] { validate(d, cfg); }) == ErrorCode::ShapeMismatch);

    auto c = make_data({{0}, {3}}, {CovariateKind::categorical}, {3});
    CHECK(error_of([&] { validate(c, ModelConfig{}); }) == ErrorCode::BadLevel);
    c.x(1, 0) = 1.5;
    CHECK(error_of([&] { validate(c, ModelConfig{}); }) == ErrorCode::BadLevel);
    c.x(1, 0) = 2;
    CHECK_NOTHROW(validate(c, ModelConfig{}));
    c.observed(1, 0) = 0;
    c.x(1, 0) = 99;
    CHECK_NOTHROW(validate(c, ModelConfig{}));
}

TEST_CASE("validate_config") {
    ModelConfig cfg;
    CHECK_NOTHROW(validate_config(cfg));
    auto bad = [&](auto mutate) {
        ModelConfig c;
        mutate(c);
        return error_of([&] { validate_config(c); });
    };
    CHECK(bad([](ModelConfig& c) { c.M = 0; }) == ErrorCode::InvalidConfig);
    CHECK(bad([](ModelConfig& c) { c.sim_v1 = -1; }) == ErrorCode::InvalidConfig);
    CHECK(bad([](ModelConfig& c) { c.mcmc.burn_in = c.mcmc.iterations; }) == ErrorCode::InvalidConfig);
    CHECK(bad([](ModelConfig& c) { c.mcmc.thin = 0; }) == ErrorCode::InvalidConfig);
    CHECK(bad([](ModelConfig& c) { c.fix.sigma0 = 20.0; }) == ErrorCode::InvalidConfig);
}

TEST_CASE("check_state") {
    ModelConfig cfg;
    PartitionState s;
    s.labels = {0, 1, 0};
    s.mu_star = {0.0, 1.0};
    s.sigma_star = {0.5, 0.5};
    CHECK_NOTHROW(check_state(s, cfg));
    CHECK(s.cluster_sizes() == std::vector<int>{2, 1});
    s.labels = {0, 0, 0};
    CHECK(error_of([&] { check_state(s, cfg); }) == ErrorCode::InvariantBreach);
    s.labels = {0, 1, 0};
    s.sigma_star[1] = cfg.a_sigma;
    CHECK(error_of([&] { check_state(s, cfg); }) == ErrorCode::InvariantBreach);
}

TEST_CASE("subset keeps schema") {
    auto d = make_data({{1.0}, {2.0}, {3.0}}, {}, {}, std::vector<double>{1, 2, 3});
    const std::vector<std::size_t> rows{2, 0};
    const auto s = d.subset(rows);
    CHECK(s.m() == 2);
    CHECK(s.x(0, 0) == 3.0);
    CHECK((*s.y)[1] == 1.0);
    CHECK(s.names == d.names);
}

TEST_CASE("parsers") {
    CHECK(parse_family("binary") == Family::binary);
    CHECK(parse_kind("categorical") == CovariateKind::categorical);
    CHECK(error_of([] { parse_family("poisson"); }) == ErrorCode::InvalidConfig);
}

}  // TEST_SUITE
