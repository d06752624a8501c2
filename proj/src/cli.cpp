#include "vdreg/cli.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"
#include "vdreg/baselines.hpp"
#include "vdreg/mcmc.hpp"
#include "vdreg/metrics.hpp"
#include "vdreg/oracle.hpp"
#include "vdreg/parallel.hpp"
#include "vdreg/predict.hpp"

namespace vdreg::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) { return io::format_double(v); }

// ---- option (de)serialization -------------------------------------------

json scenario_json(const Scenario& s) {
    return {{"p", s.p},
            {"noise", s.cluster_noise},
            {"missing_type", to_string(s.missing_type)},
            {"missing_frac", s.missing_frac},
            {"hetero", s.heteroscedastic},
            {"n_per_cluster", s.n_per_cluster},
            {"seed", s.seed},
            {"unchecked", s.unchecked}};
}

Scenario scenario_from_json(const json& j) {
    Scenario s;
    s.p = j.at("p").get<int>();
    s.cluster_noise = j.at("noise").get<double>();
    s.missing_type = parse_missing_type(j.at("missing_type").get<std::string>());
    s.missing_frac = j.at("missing_frac").get<double>();
    s.heteroscedastic = j.at("hetero").get<bool>();
    s.n_per_cluster = j.value("n_per_cluster", 50);
    s.seed = j.value("seed", std::uint64_t{1});
    s.unchecked = j.value("unchecked", false);
    return s;
}

json options_json(const SimulateOptions& o) { return {{"scenario", scenario_json(o.scenario)}, {"outdir", o.outdir}}; }
json options_json(const FitOptions& o) {
    return {{"train", o.train}, {"config", io::to_json(o.config)}, {"outdir", o.outdir}};
}
json options_json(const PredictOptions& o) { return {{"fit", o.fit_dir}, {"test", o.test}, {"outdir", o.outdir}}; }
json options_json(const CrossValidateOptions& o) {
    json j{{"data", o.data}, {"config", io::to_json(o.config)}, {"splits", o.splits}, {"seed", o.seed},
           {"outdir", o.outdir}};
    j["train_frac"] = o.train_frac ? json(*o.train_frac) : json(nullptr);
    j["train_size"] = o.train_size ? json(*o.train_size) : json(nullptr);
    return j;
}
json options_json(const BenchmarkOptions& o) { return {{"grid", to_json(o.grid)}, {"outdir", o.outdir}}; }

void write_manifest(const fs::path& dir, const std::string& command, const json& options,
                    const std::vector<std::string>& outputs, std::uint64_t seed, double seconds) {
    json j{{"command", command},
           {"options", options},
           {"outputs", outputs},
           {"seed", seed},
           {"version", kVersion},
           {"wall_clock_seconds", seconds}};
    io::write_text_atomic(dir / "manifest.json", j.dump(2) + "\n");
}

void write_timing(const fs::path& dir, double seconds) {
    io::write_text_atomic(dir / "timing.json", json{{"seconds", seconds}}.dump(2) + "\n");
}

// ---- shared fit / score machinery ---------------------------------------

struct FittedModel {
    Standardization transform;
    Dataset train;  // standardized
    ChainResult chain;
    std::vector<double> fitted;
};

FittedModel fit_model(const Dataset& raw, const ModelConfig& config, std::uint64_t stream) {
    validate(raw, config);
    if (!raw.y) throw Error(ErrorCode::BadOutcome, "training data has no 'y' column");
    FittedModel f;
    auto st = standardize(raw, {});
    f.transform = st.transform;
    f.train = std::move(st.train);
    f.chain = run_chain(f.train, config, stream);
    f.fitted = fitted_values(f.chain.draws, f.train, config.family);
    return f;
}

io::ResultRow base_row(const std::string& command, const std::string& method, std::uint64_t seed,
                       const std::string& replicate) {
    io::ResultRow r;
    r.command = command;
    r.method = method;
    r.seed = std::to_string(seed);
    r.replicate = replicate;
    return r;
}

void add_metric(std::vector<io::ResultRow>& rows, io::ResultRow base, const std::string& metric,
                const std::function<double()>& compute, std::size_t n) {
    base.metric = metric;
    base.n = std::to_string(n);
    try {
        base.value = fmt(compute());
    } catch (const Error& e) {
        base.value = "NA";
        base.status = std::string(error_name(e.code()));
    }
    rows.push_back(std::move(base));
}

// In-sample ("in") or held-out ("out") outcome metrics for one method.
void outcome_metrics(std::vector<io::ResultRow>& rows, const io::ResultRow& base, Family family,
                     const std::vector<double>& y, const std::vector<double>& yhat, bool in_sample) {
    if (family == Family::gaussian) {
        add_metric(rows, base, in_sample ? "mse" : "mspe", [&] { return mse(y, yhat); }, y.size());
        return;
    }
    const std::string suffix = in_sample ? "_in" : "_out";
    add_metric(rows, base, "pct_correct" + suffix, [&] { return pct_correct(y, yhat); }, y.size());
    add_metric(rows, base, "tjur_r2" + suffix, [&] { return tjur_r2(y, yhat); }, y.size());
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string());
}

std::string model_json_name() { return "model.json"; }

}  // namespace

// ---- benchmark grid -----------------------------------------------------

BenchmarkGrid grid_from_json(const json& j) {
    BenchmarkGrid g;
    try {
        if (j.contains("p")) g.p = j.at("p").get<std::vector<int>>();
        if (j.contains("noise")) g.noise = j.at("noise").get<std::vector<double>>();
        if (j.contains("missing_type")) {
            g.missing_type.clear();
            for (const auto& t : j.at("missing_type")) g.missing_type.push_back(parse_missing_type(t.get<std::string>()));
        }
        if (j.contains("missing_frac")) g.missing_frac = j.at("missing_frac").get<std::vector<double>>();
        if (j.contains("hetero")) g.hetero = j.at("hetero").get<std::vector<bool>>();
        g.replicates = j.value("replicates", g.replicates);
        g.seed = j.value("seed", g.seed);
        g.n_per_cluster = j.value("n_per_cluster", g.n_per_cluster);
        g.unchecked = j.value("unchecked", g.unchecked);
        if (j.contains("methods")) g.methods = j.at("methods").get<std::vector<std::string>>();
        if (j.contains("config")) g.config = io::run_config_from_json(j.at("config"));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, std::string("grid: ") + e.what());
    }
    for (const auto& m : g.methods)
        if (m != "vdreg" && m != "cc_ols" && m != "mean_ols")
            throw Error(ErrorCode::InvalidConfig, "unknown benchmark method '" + m + "'");
    if (g.replicates < 1) throw Error(ErrorCode::InvalidConfig, "replicates must be >= 1");
    return g;
}

json to_json(const BenchmarkGrid& g) {
    json types = json::array();
    for (auto t : g.missing_type) types.push_back(to_string(t));
    return {{"p", g.p},
            {"noise", g.noise},
            {"missing_type", types},
            {"missing_frac", g.missing_frac},
            {"hetero", g.hetero},
            {"replicates", g.replicates},
            {"seed", g.seed},
            {"n_per_cluster", g.n_per_cluster},
            {"unchecked", g.unchecked},
            {"methods", g.methods},
            {"config", io::to_json(g.config)}};
}

// ---- commands ----------------------------------------------------------

void cmd_simulate(const SimulateOptions& o) {
    const auto start = Clock::now();
    const auto data = make_scenario_datasets(o.scenario);
    ensure_dir(o.outdir);
    io::write_csv(o.outdir / "train.csv", data.train);
    io::write_csv(o.outdir / "test.csv", data.test);
    write_manifest(o.outdir, "simulate", options_json(o), {"train.csv", "test.csv"}, o.scenario.seed,
                   seconds_since(start));
}

void cmd_fit(const FitOptions& o) {
    const auto start = Clock::now();
    const auto raw = io::read_csv(o.train, o.config.covariates);
    const auto& config = o.config.model;
    auto f = fit_model(raw, config, 0);
    ensure_dir(o.outdir);

    io::write_draws(o.outdir, f.chain.draws);
    io::write_text_atomic(o.outdir / "diagnostics.json", io::diagnostics_json(f.chain.diagnostics).dump(2) + "\n");
    write_timing(o.outdir, f.chain.diagnostics.seconds);

    std::ostringstream fitted;
    fitted << "row_id,fitted,truth\n";
    for (std::size_t i = 0; i < raw.m(); ++i) fitted << i + 1 << ',' << fmt(f.fitted[i]) << ',' << fmt((*raw.y)[i]) << '\n';
    io::write_text_atomic(o.outdir / "fitted.csv", fitted.str());

    io::write_csv(o.outdir / "train_data.csv", raw);
    json model{{"config", io::to_json(o.config)}, {"names", raw.names}, {"transform", io::to_json(f.transform)}};
    io::write_text_atomic(o.outdir / model_json_name(), model.dump(2) + "\n");

    std::vector<io::ResultRow> rows;
    outcome_metrics(rows, base_row("fit", "vdreg", config.mcmc.seed, "1"), config.family, *raw.y, f.fitted, true);
    const auto results = o.outdir / "results.csv";
    fs::remove(results);
    io::append_results(results, rows);

    write_manifest(o.outdir, "fit", options_json(o),
                   {"draws_units.csv", "draws_hyper.csv", "diagnostics.json", "fitted.csv", "train_data.csv",
                    "model.json", "results.csv"},
                   config.mcmc.seed, seconds_since(start));
}

void cmd_predict(const PredictOptions& o) {
    const auto start = Clock::now();
    const auto model = json::parse(io::read_text(o.fit_dir / model_json_name()));
    const auto rc = io::run_config_from_json(model.at("config"));
    const auto names = model.at("names").get<std::vector<std::string>>();
    const auto transform = io::standardization_from_json(model.at("transform"));
    const auto train_raw = io::read_csv(o.fit_dir / "train_data.csv", rc.covariates);
    const auto test_raw = io::read_csv(o.test, rc.covariates);
    if (test_raw.names != names) {
        std::string got;
        for (const auto& n : test_raw.names) got += (got.empty() ? "" : ",") + n;
        throw Error(ErrorCode::SchemaMismatch, "test covariates [" + got + "] differ from the fitted schema");
    }
    validate(test_raw, rc.model);
    const auto draws = io::read_draws(o.fit_dir);
    const auto train = transform.apply(train_raw);
    const auto test = transform.apply(test_raw);
    const auto pred = predict_point(draws, train, test, rc.model);

    ensure_dir(o.outdir);
    std::ostringstream os;
    os << "row_id,prediction" << (test_raw.y ? ",truth" : "") << ",sd\n";
    for (std::size_t r = 0; r < test.m(); ++r) {
        os << r + 1 << ',' << fmt(pred.point[r]);
        if (test_raw.y) os << ',' << fmt((*test_raw.y)[r]);
        os << ',' << fmt(pred.sd[r]) << '\n';
    }
    io::write_text_atomic(o.outdir / "predictions.csv", os.str());
    std::vector<std::string> outputs{"predictions.csv"};
    if (test_raw.y) {
        std::vector<io::ResultRow> rows;
        outcome_metrics(rows, base_row("predict", "vdreg", rc.model.mcmc.seed, "1"), rc.model.family, *test_raw.y,
                        pred.point, false);
        io::append_results(o.outdir / "results.csv", rows);
        outputs.push_back("results.csv");
    }
    write_manifest(o.outdir, "predict", options_json(o), outputs, rc.model.mcmc.seed, seconds_since(start));
}

void cmd_crossvalidate(const CrossValidateOptions& o) {
    const auto start = Clock::now();
    if (o.train_frac && !(*o.train_frac > 0.0 && *o.train_frac < 1.0))
        throw Error(ErrorCode::InvalidConfig, "train fraction must be in (0, 1)");
    if (o.splits < 1) throw Error(ErrorCode::InvalidConfig, "need at least one split");
    const auto raw = io::read_csv(o.data, o.config.covariates);
    const auto& config = o.config.model;
    validate(raw, config);
    if (!raw.y) throw Error(ErrorCode::BadOutcome, "cross-validation needs a 'y' column");
    const std::size_t m = raw.m();
    std::size_t n_train = 0;
    if (o.train_size)
        n_train = static_cast<std::size_t>(*o.train_size);
    else if (o.train_frac)
        n_train = static_cast<std::size_t>(std::lround(*o.train_frac * static_cast<double>(m)));
    else
        n_train = m > 75 ? 75 : static_cast<std::size_t>(std::lround(0.75 * static_cast<double>(m)));
    if (n_train < 1 || n_train >= m) throw Error(ErrorCode::InvalidConfig, "training split leaves no test rows");

    std::vector<std::vector<io::ResultRow>> per_split(static_cast<std::size_t>(o.splits));
    parallel_for(per_split.size(), [&](std::size_t s) {
        Rng rng(o.seed, s);
        std::vector<std::size_t> order(m);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::shuffle(order.begin(), order.end(), rng.engine());
        std::vector<std::size_t> tr(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
        std::vector<std::size_t> te(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
        std::sort(tr.begin(), tr.end());
        std::sort(te.begin(), te.end());
        const Dataset train = raw.subset(tr);
        const Dataset test = raw.subset(te);
        auto& rows = per_split[s];
        const auto base = base_row("crossvalidate", "vdreg", config.mcmc.seed, std::to_string(s + 1));
        try {
            auto f = fit_model(train, config, s);
            const auto pred = predict_point(f.chain.draws, f.train, f.transform.apply(test), config);
            outcome_metrics(rows, base, config.family, *train.y, f.fitted, true);
            outcome_metrics(rows, base, config.family, *test.y, pred.point, false);
        } catch (const Error& e) {
            auto r = base;
            r.metric = "fit";
            r.value = "NA";
            r.status = std::string(error_name(e.code()));
            rows.push_back(r);
        }
    });

    std::vector<io::ResultRow> all;
    std::map<std::string, std::pair<double, int>> sums;
    std::vector<std::string> order;
    for (const auto& rows : per_split)
        for (const auto& r : rows) {
            all.push_back(r);
            if (r.status != "ok") continue;
            auto [it, inserted] = sums.try_emplace(r.metric, 0.0, 0);
            if (inserted) order.push_back(r.metric);
            it->second.first += std::stod(r.value);
            ++it->second.second;
        }
    for (const auto& metric : order) {
        auto r = base_row("crossvalidate", "vdreg", config.mcmc.seed, "mean");
        r.metric = metric;
        r.value = fmt(sums[metric].first / sums[metric].second);
        r.n = std::to_string(sums[metric].second);
        all.push_back(r);
    }
    ensure_dir(o.outdir);
    const auto results = o.outdir / "results.csv";
    fs::remove(results);
    io::append_results(results, all);
    write_manifest(o.outdir, "crossvalidate", options_json(o), {"results.csv"}, o.seed, seconds_since(start));
}

void cmd_benchmark(const BenchmarkOptions& o) {
    const auto start = Clock::now();
    const auto& g = o.grid;
    std::vector<Scenario> jobs;
    std::vector<int> replicate;
    for (int p : g.p)
        for (double noise : g.noise)
            for (auto type : g.missing_type)
                for (double frac : g.missing_frac)
                    for (bool hetero : g.hetero)
                        for (int r = 0; r < g.replicates; ++r) {
                            Scenario s;
                            s.p = p;
                            s.cluster_noise = noise;
                            s.missing_type = type;
                            s.missing_frac = frac;
                            s.heteroscedastic = hetero;
                            s.n_per_cluster = g.n_per_cluster;
                            s.unchecked = g.unchecked;
                            s.seed = g.seed + static_cast<std::uint64_t>(r);
                            validate_scenario(s);
                            jobs.push_back(s);
                            replicate.push_back(r);
                        }

    const auto& config = g.config.model;
    std::vector<std::vector<io::ResultRow>> per_job(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t jdx) {
        const auto& s = jobs[jdx];
        const auto data = make_scenario_datasets(s);
        auto& rows = per_job[jdx];
        auto tag = [&](const std::string& method) {
            auto r = base_row("benchmark", method, s.seed, std::to_string(replicate[jdx] + 1));
            r.p = std::to_string(s.p);
            r.noise = fmt(s.cluster_noise);
            r.missing_type = to_string(s.missing_type);
            r.missing_frac = fmt(s.missing_frac);
            r.hetero = s.heteroscedastic ? "true" : "false";
            return r;
        };
        auto failed = [&](const std::string& method, const Error& e) {
            for (const char* metric : {"mse", "mspe"}) {
                auto r = tag(method);
                r.metric = metric;
                r.value = "NA";
                r.n = "0";
                r.status = std::string(error_name(e.code()));
                rows.push_back(r);
            }
        };
        for (const auto& method : g.methods) {
            try {
                std::vector<double> fitted, predicted;
                if (method == "vdreg") {
                    auto f = fit_model(data.train, config, static_cast<std::uint64_t>(replicate[jdx]));
                    predicted = predict_point(f.chain.draws, f.train, f.transform.apply(data.test), config).point;
                    fitted = std::move(f.fitted);
                } else {
                    const auto st = standardize(data.train, {data.test});
                    const auto b = method == "cc_ols" ? complete_case_ols(st.train, st.others[0])
                                                      : mean_imputation_ols(st.train, st.others[0]);
                    fitted = b.fitted;
                    predicted = b.predicted;
                }
                outcome_metrics(rows, tag(method), Family::gaussian, *data.train.y, fitted, true);
                outcome_metrics(rows, tag(method), Family::gaussian, *data.test.y, predicted, false);
            } catch (const Error& e) {
                failed(method, e);
            }
        }
    });
    ensure_dir(o.outdir);
    const auto results = o.outdir / "results.csv";
    fs::remove(results);
    std::vector<io::ResultRow> all;
    for (auto& rows : per_job) all.insert(all.end(), rows.begin(), rows.end());
    io::append_results(results, all);
    write_manifest(o.outdir, "benchmark", options_json(o), {"results.csv"}, g.seed, seconds_since(start));
}

std::string cmd_oracle(const OracleOptions& o) {
    const auto data = io::read_csv(o.data, o.config.covariates);
    validate(data, o.config.model);
    oracle::PartitionTable table;
    if (o.kind == "prior")
        table = oracle::exact_prior(data, o.config.model);
    else if (o.kind == "posterior")
        table = oracle::exact_posterior_fixed(data, o.config.model);
    else
        throw Error(ErrorCode::InvalidConfig, "oracle kind must be prior or posterior");
    std::ostringstream os;
    os << "partition,k,log_prob,prob\n";
    for (std::size_t t = 0; t < table.size(); ++t) {
        const auto& part = table.partitions[t];
        std::string label;
        for (int c : part) label += (label.empty() ? "" : "-") + std::to_string(c + 1);
        os << label << ',' << *std::max_element(part.begin(), part.end()) + 1 << ',' << fmt(table.log_prob[t]) << ','
           << fmt(table.prob[t]) << '\n';
    }
    if (o.out) io::write_text_atomic(*o.out, os.str());
    return os.str();
}

void replay(const fs::path& manifest_path, const std::optional<fs::path>& outdir) {
    const auto manifest = json::parse(io::read_text(manifest_path));
    const auto command = manifest.at("command").get<std::string>();
    const auto& opt = manifest.at("options");
    const fs::path out = outdir ? *outdir : fs::path(opt.at("outdir").get<std::string>());
    if (command == "simulate") {
        cmd_simulate({scenario_from_json(opt.at("scenario")), out});
    } else if (command == "fit") {
        cmd_fit({opt.at("train").get<std::string>(), io::run_config_from_json(opt.at("config")), out});
    } else if (command == "predict") {
        cmd_predict({opt.at("fit").get<std::string>(), opt.at("test").get<std::string>(), out});
    } else if (command == "crossvalidate") {
        CrossValidateOptions o;
        o.data = opt.at("data").get<std::string>();
        o.config = io::run_config_from_json(opt.at("config"));
        o.splits = opt.at("splits").get<int>();
        o.seed = opt.at("seed").get<std::uint64_t>();
        if (!opt.at("train_frac").is_null()) o.train_frac = opt.at("train_frac").get<double>();
        if (!opt.at("train_size").is_null()) o.train_size = opt.at("train_size").get<int>();
        o.outdir = out;
        cmd_crossvalidate(o);
    } else if (command == "benchmark") {
        cmd_benchmark({grid_from_json(opt.at("grid")), out});
    } else {
        throw Error(ErrorCode::InvalidConfig, "manifest command '" + command + "' cannot be replayed");
    }
}

// ---- argument parsing ----------------------------------------------------

namespace {

struct McmcOverrides {
    std::optional<std::string> family;
    std::optional<std::uint64_t> seed;
    std::optional<int> iterations, burn_in, thin;

    void attach(CLI::App* app) {
        app->add_option("--family", family, "gaussian or binary (overrides config)");
        app->add_option("--seed", seed, "MCMC seed (overrides config)");
        app->add_option("--iterations", iterations, "total MCMC iterations");
        app->add_option("--burn-in", burn_in, "burn-in iterations");
        app->add_option("--thin", thin, "thinning interval");
    }

    io::RunConfig apply(const std::optional<std::string>& config_path) const {
        io::RunConfig rc = config_path ? io::load_run_config(*config_path) : io::RunConfig{};
        if (family) rc.model.family = parse_family(*family);
        if (seed) rc.model.mcmc.seed = *seed;
        if (iterations) rc.model.mcmc.iterations = *iterations;
        if (burn_in) rc.model.mcmc.burn_in = *burn_in;
        if (thin) rc.model.mcmc.thin = *thin;
        validate_config(rc.model);
        return rc;
    }
};

void print_error(const std::string& name, const std::string& message) {
    std::cerr << json{{"error", name}, {"message", message}}.dump() << std::endl;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"Regression and clustering with variable-dimension covariates"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    SimulateOptions sim;
    std::string sim_missing = "mar";
    auto* simulate = app.add_subcommand("simulate", "generate a train/test scenario");
    simulate->add_option("--p", sim.scenario.p, "number of covariates (2, 4, 10)");
    simulate->add_option("--noise", sim.scenario.cluster_noise, "covariate cluster sd s");
    simulate->add_option("--missing", sim_missing, "mar or mnar");
    simulate->add_option("--frac", sim.scenario.missing_frac, "missing fraction per covariate");
    simulate->add_flag("--hetero", sim.scenario.heteroscedastic, "cluster-specific response sd");
    simulate->add_option("--n-per-cluster", sim.scenario.n_per_cluster, "rows per cluster");
    simulate->add_option("--seed", sim.scenario.seed, "scenario seed");
    simulate->add_flag("--unchecked", sim.scenario.unchecked, "allow factor levels outside the design grid");
    simulate->add_option("--outdir", sim.outdir, "output directory")->required();

    FitOptions fit;
    std::optional<std::string> fit_config;
    McmcOverrides fit_over;
    auto* fitc = app.add_subcommand("fit", "fit the model to a training CSV");
    fitc->add_option("--train", fit.train, "training CSV")->required();
    fitc->add_option("--config", fit_config, "JSON config");
    fitc->add_option("--outdir", fit.outdir, "output directory")->required();
    fit_over.attach(fitc);

    PredictOptions pred;
    auto* predc = app.add_subcommand("predict", "predict test rows from a fit directory");
    predc->add_option("--fit", pred.fit_dir, "fit output directory")->required();
    predc->add_option("--test", pred.test, "test CSV")->required();
    predc->add_option("--outdir", pred.outdir, "output directory")->required();

    CrossValidateOptions cv;
    std::optional<std::string> cv_config;
    McmcOverrides cv_over;
    auto* cvc = app.add_subcommand("crossvalidate", "repeated random train/test splits");
    cvc->add_option("--data", cv.data, "data CSV")->required();
    cvc->add_option("--config", cv_config, "JSON config");
    cvc->add_option("--splits", cv.splits, "number of random splits");
    cvc->add_option("--train-frac", cv.train_frac, "training fraction in (0,1)");
    cvc->add_option("--train-size", cv.train_size, "training rows (overrides --train-frac)");
    cvc->add_option("--split-seed", cv.seed, "seed of the split sequence");
    cvc->add_option("--outdir", cv.outdir, "output directory")->required();
    cv_over.attach(cvc);

    BenchmarkOptions bench;
    std::string grid_path;
    auto* benchc = app.add_subcommand("benchmark", "run a simulation grid against baselines");
    benchc->add_option("--grid", grid_path, "grid JSON")->required();
    benchc->add_option("--outdir", bench.outdir, "output directory")->required();

    OracleOptions orc;
    std::optional<std::string> orc_config;
    std::optional<std::string> orc_out;
    auto* oraclec = app.add_subcommand("oracle", "exact partition table by enumeration (m <= 10)");
    oraclec->add_option("--data", orc.data, "data CSV")->required();
    oraclec->add_option("--config", orc_config, "JSON config");
    oraclec->add_option("--kind", orc.kind, "prior or posterior");
    oraclec->add_option("--out", orc_out, "output CSV (default stdout)");

    std::string manifest;
    std::optional<std::string> replay_out;
    auto* replayc = app.add_subcommand("replay", "re-run a command from its manifest.json");
    replayc->add_option("--manifest", manifest, "manifest.json")->required();
    replayc->add_option("--outdir", replay_out, "output directory (default: the recorded one)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        print_error("UsageError", e.what());
        return 1;
    }

    try {
        if (*simulate) {
            sim.scenario.missing_type = parse_missing_type(sim_missing);
            cmd_simulate(sim);
        } else if (*fitc) {
            fit.config = fit_over.apply(fit_config);
            cmd_fit(fit);
        } else if (*predc) {
            cmd_predict(pred);
        } else if (*cvc) {
            cv.config = cv_over.apply(cv_config);
            cmd_crossvalidate(cv);
        } else if (*benchc) {
            bench.grid = grid_from_json(json::parse(io::read_text(grid_path)));
            cmd_benchmark(bench);
        } else if (*oraclec) {
            orc.config = orc_config ? io::load_run_config(*orc_config) : io::RunConfig{};
            if (orc_out) orc.out = *orc_out;
            const auto table = cmd_oracle(orc);
            if (!orc.out) std::cout << table;
        } else if (*replayc) {
            replay(manifest, replay_out ? std::optional<fs::path>(*replay_out) : std::nullopt);
        }
    } catch (const Error& e) {
        print_error(std::string(error_name(e.code())), e.what());
        return 2;
    } catch (const json::exception& e) {
        print_error("ParseError", e.what());
        return 2;
    } catch (const std::exception& e) {
        print_error("InternalError", e.what());
        return 3;
    }
    return 0;
}

}  // namespace vdreg::cli
