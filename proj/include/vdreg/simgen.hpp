#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vdreg/random.hpp"
#include "vdreg/types.hpp"

namespace vdreg {

enum class MissingType { mar, mnar };

std::string to_string(MissingType type);
MissingType parse_missing_type(const std::string& text);

struct Scenario {
    int p = 2;
    double cluster_noise = 0.25;
    MissingType missing_type = MissingType::mar;
    double missing_frac = 0.0;
    bool heteroscedastic = false;
    int n_per_cluster = 50;
    std::uint64_t seed = 1;
    bool unchecked = false;  // allow levels outside the design grid
};

/// Throws InvalidScenario for levels outside {2,4,10} x {0.25,0.5,0.75} x
/// {0,0.1,0.25,0.5} unless `unchecked`.
void validate_scenario(const Scenario& s);

struct SimulatedCovariates {
    Matrix<double> x;
    std::vector<int> labels;  // 0..3
};

/// Sign pattern of cluster `j` (0..3) in dimension `p`: all +1, alternating
/// (+,-), alternating (-,+), all -1.
std::vector<double> cluster_mean(int j, int p);

SimulatedCovariates gen_covariates(const Scenario& s, Rng& rng);
std::vector<double> gen_responses(const std::vector<int>& labels, bool heteroscedastic, Rng& rng);

inline constexpr double kClusterMeans[4] = {-1.0, -0.5, 0.0, 0.5};
inline constexpr double kHeteroSd[4] = {0.1, 0.25, 0.5, 0.75};
inline constexpr double kHomoSd = 0.25;

/// Per-column amputation. MAR masks each entry with probability `frac`; MNAR
/// masks with probability logistic(z + b), z the standardized value and b
/// solved so the column mean probability equals `frac` (always a valid
/// probability, so nothing needs clipping).
Matrix<std::uint8_t> ampute(const Matrix<double>& x, MissingType type, double frac, Rng& rng);

/// Intercept b with mean_i logistic(z_i + b) = frac (bisection).
double mnar_intercept(const std::vector<double>& z, double frac);

struct ScenarioData {
    Dataset train;
    Dataset test;
    std::vector<int> train_labels;
    std::vector<int> test_labels;
    std::vector<std::size_t> train_rows;  // indices into the 4*n generated rows
    std::vector<std::size_t> test_rows;
};

/// Generate 4*n rows, ampute, then split uniformly into halves.
ScenarioData make_scenario_datasets(const Scenario& s);

/// Two covariate clusters at +1 / -1 (noise sd `noise`) with probit truth
/// y ~ Bernoulli(Phi(+-mu)). Returns the full (unsplit) set.
Dataset make_binary_dataset(int n_per_cluster, int p, double noise, double mu, std::uint64_t seed);

}  // namespace vdreg
