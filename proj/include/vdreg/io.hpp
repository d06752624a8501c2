#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vdreg/mcmc.hpp"
#include "vdreg/types.hpp"

#include "json.hpp"

namespace vdreg::io {

using nlohmann::json;
namespace fs = std::filesystem;

struct CovariateSpec {
    CovariateKind kind = CovariateKind::continuous;
    int n_levels = 0;
};

// Model configuration plus per-column covariate declarations, as read from
// the JSON sidecar. Undeclared columns are continuous.
struct RunConfig {
    ModelConfig model;
    std::map<std::string, CovariateSpec> covariates;
};

RunConfig run_config_from_json(const json& j);
json to_json(const RunConfig& config);
RunConfig load_run_config(const fs::path& path);

/// Shortest round-trip decimal form.
std::string format_double(double v);

/// CSV with a header row; `y` is the response, other columns are covariates.
/// Empty cells and "NA" are missing. Masked cells are stored as NaN.
Dataset read_csv(const fs::path& path, const std::map<std::string, CovariateSpec>& covariates);
Dataset parse_csv(const std::string& text, const std::map<std::string, CovariateSpec>& covariates,
                  const std::string& source = "<memory>");
void write_csv(const fs::path& path, const Dataset& data);

json to_json(const Standardization& t);
Standardization standardization_from_json(const json& j);

/// draws_units.csv (draw, unit, label, mu_star, sigma_star), 1-based.
void write_draws(const fs::path& dir, const PosteriorDraws& draws);
/// Inverse of write_draws; latent scores are not serialized.
PosteriorDraws read_draws(const fs::path& dir);

json diagnostics_json(const ChainDiagnostics& d);

// Results table shared by every command.
struct ResultRow {
    std::string command;
    std::string p, noise, missing_type, missing_frac, hetero, seed;
    std::string method;
    std::string metric;
    std::string value;
    std::string n;
    std::string replicate;
    std::string status = "ok";
};

inline const char* kResultsHeader =
    "command,p,noise,missing_type,missing_frac,hetero,seed,method,metric,value,n,replicate,status";

void append_results(const fs::path& path, const std::vector<ResultRow>& rows);

void write_text_atomic(const fs::path& path, const std::string& text);
std::string read_text(const fs::path& path);

}  // namespace vdreg::io
