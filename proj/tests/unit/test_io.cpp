#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "vdreg/io.hpp"

using namespace vdreg;
using vdreg::test::error_of;
using vdreg::test::make_data;
using vdreg::test::NA;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("vdreg_unit_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("csv parsing with missing cells and categorical columns") {
    const std::string text = "y,x1,grp\n1.5,0.25,1\n-2,NA,0\n0,,2\n";
    std::map<std::string, io::CovariateSpec> cov{{"grp", {CovariateKind::categorical, 3}}};
    const auto d = io::parse_csv(text, cov);
    CHECK(d.m() == 3);
    CHECK(d.names == std::vector<std::string>{"x1", "grp"});
    CHECK(d.kinds[1] == CovariateKind::categorical);
    CHECK(d.n_levels[1] == 3);
    CHECK((*d.y)[1] == -2.0);
    CHECK(!d.is_observed(1, 0));
    CHECK(!d.is_observed(2, 0));
    CHECK(std::isnan(d.x(1, 0)));
    CHECK(d.x(2, 1) == 2.0);
}

TEST_CASE("csv errors carry coordinates") {
    const std::map<std::string, io::CovariateSpec> none;
    try {
        io::parse_csv("y,x1\n1,2\n3,abc\n", none, "t.csv");
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(std::string(e.what()).find("row 2") != std::string::npos);
        CHECK(std::string(e.what()).find("column 2") != std::string::npos);
    }
    CHECK(error_of([&] { io::parse_csv("y,x1\n1,2,3\n", none); }) == ErrorCode::ShapeMismatch);
    CHECK(error_of([&] { io::parse_csv("y,x1\nNA,2\n", none); }) == ErrorCode::BadOutcome);
    CHECK(error_of([&] { io::parse_csv("y,x1\n", none); }) == ErrorCode::ParseError);
    std::map<std::string, io::CovariateSpec> missing{{"z", {CovariateKind::continuous, 0}}};
    CHECK(error_of([&] { io::parse_csv("y,x1\n1,2\n", missing); }) == ErrorCode::SchemaMismatch);
}

TEST_CASE("csv round trip") {
    const auto dir = scratch("csv");
    auto d = make_data({{0.1, NA}, {1.0 / 3.0, -2.5e-7}}, {}, {}, std::vector<double>{1.0, 0.1 + 0.2});
    io::write_csv(dir / "d.csv", d);
    const auto back = io::read_csv(dir / "d.csv", {});
    CHECK(back.x(1, 0) == d.x(1, 0));
    CHECK(back.x(1, 1) == d.x(1, 1));
    CHECK(back.observed == d.observed);
    CHECK(*back.y == *d.y);
}

TEST_CASE("format_double") {
    CHECK(io::format_double(0.5) == "0.5");
    CHECK(io::format_double(NA) == "NA");
    CHECK(std::stod(io::format_double(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("config round trip and validation") {
    const auto j = io::json::parse(R"({"family":"binary","M":2.5,"mcmc":{"iterations":100,"burn_in":10,"thin":3},
        "fix_hyper":{"mu0":0.0},"covariates":{"g":{"kind":"categorical","n_levels":4}}})");
    const auto rc = io::run_config_from_json(j);
    CHECK(rc.model.family == Family::binary);
    CHECK(rc.model.M == 2.5);
    CHECK(rc.model.mcmc.thin == 3);
    CHECK(rc.model.fix.mu0 == 0.0);
    CHECK(!rc.model.fix.sigma0);
    CHECK(rc.covariates.at("g").n_levels == 4);
    const auto again = io::run_config_from_json(io::to_json(rc));
    CHECK(io::to_json(again) == io::to_json(rc));
    CHECK(error_of([] { io::run_config_from_json(io::json::parse(R"({"M":-1})")); }) == ErrorCode::InvalidConfig);
    CHECK(error_of([] { io::run_config_from_json(io::json::parse(R"({"M":"x"})")); }) == ErrorCode::InvalidConfig);
    CHECK(error_of([] {
              io::run_config_from_json(io::json::parse(R"({"covariates":{"g":{"kind":"categorical"}}})"));
          }) == ErrorCode::InvalidConfig);
}

TEST_CASE("draws round trip") {
    const auto dir = scratch("draws");
    PosteriorDraws draws;
    PartitionState s;
    s.labels = {0, 1, 0};
    s.mu_star = {0.1, -1.0 / 3.0};
    s.sigma_star = {0.25, 1.5};
    s.mu0 = 0.7;
    s.sigma0 = 2.0;
    draws.states = {s, s};
    draws.states[1].labels = {0, 0, 0};
    draws.states[1].mu_star = {0.0};
    draws.states[1].sigma_star = {0.5};
    io::write_draws(dir, draws);
    const auto back = io::read_draws(dir);
    REQUIRE(back.size() == 2);
    for (std::size_t t = 0; t < 2; ++t) {
        CHECK(back.states[t].labels == draws.states[t].labels);
        CHECK(back.states[t].mu_star == draws.states[t].mu_star);
        CHECK(back.states[t].sigma_star == draws.states[t].sigma_star);
        CHECK(back.states[t].mu0 == draws.states[t].mu0);
        CHECK(back.states[t].sigma0 == draws.states[t].sigma0);
    }
    const auto units = io::read_text(dir / "draws_units.csv");
    CHECK(units.rfind("draw,unit,label,mu_star,sigma_star\n1,1,1,", 0) == 0);
}

TEST_CASE("standardization round trip") {
    Standardization t{{0.5, 0.0}, {2.0, 1.0}};
    const auto back = io::standardization_from_json(io::to_json(t));
    CHECK(back.center == t.center);
    CHECK(back.scale == t.scale);
}

TEST_CASE("results append keeps one header") {
    const auto dir = scratch("results");
    io::ResultRow r;
    r.command = "fit";
    r.metric = "mse";
    r.value = "0.5";
    io::append_results(dir / "r.csv", {r});
    io::append_results(dir / "r.csv", {r});
    const auto text = io::read_text(dir / "r.csv");
    CHECK(text.rfind(std::string(io::kResultsHeader) + "\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}

}  // TEST_SUITE
