#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vdreg/io.hpp"
#include "vdreg/simgen.hpp"

namespace vdreg::cli {

namespace fs = std::filesystem;
using io::json;

inline constexpr const char* kVersion = "0.1.0";

struct SimulateOptions {
    Scenario scenario;
    fs::path outdir;
};

struct FitOptions {
    fs::path train;
    io::RunConfig config;
    fs::path outdir;
};

struct PredictOptions {
    fs::path fit_dir;
    fs::path test;
    fs::path outdir;
};

struct CrossValidateOptions {
    fs::path data;
    io::RunConfig config;
    int splits = 100;
    std::optional<double> train_frac;
    std::optional<int> train_size;
    std::uint64_t seed = 1;
    fs::path outdir;
};

struct BenchmarkGrid {
    std::vector<int> p{2};
    std::vector<double> noise{0.25};
    std::vector<MissingType> missing_type{MissingType::mnar};
    std::vector<double> missing_frac{0.0};
    std::vector<bool> hetero{true};
    int replicates = 1;
    std::uint64_t seed = 1;
    int n_per_cluster = 50;
    bool unchecked = false;
    std::vector<std::string> methods{"vdreg", "cc_ols", "mean_ols"};
    io::RunConfig config;
};

struct BenchmarkOptions {
    BenchmarkGrid grid;
    fs::path outdir;
};

struct OracleOptions {
    fs::path data;
    io::RunConfig config;
    std::string kind = "prior";  // prior | posterior
    std::optional<fs::path> out;
};

BenchmarkGrid grid_from_json(const json& j);
json to_json(const BenchmarkGrid& g);

// Each command writes its outputs plus manifest.json (options snapshot,
// enough to replay) and, where a chain runs, timing.json. Everything except
// manifest.json and timing.json is a pure function of the manifest.
void cmd_simulate(const SimulateOptions& o);
void cmd_fit(const FitOptions& o);
void cmd_predict(const PredictOptions& o);
void cmd_crossvalidate(const CrossValidateOptions& o);
void cmd_benchmark(const BenchmarkOptions& o);
std::string cmd_oracle(const OracleOptions& o);

/// Re-executes the command recorded in a manifest, optionally into a different
/// output directory.
void replay(const fs::path& manifest, const std::optional<fs::path>& outdir = std::nullopt);

/// Argument parsing and dispatch. On failure prints {"error": ..., "message": ...}
/// to stderr and returns nonzero.
int run(int argc, char** argv);

}  // namespace vdreg::cli
