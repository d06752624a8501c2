#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vdreg/error.hpp"

namespace vdreg {

// Dense row-major matrix; just enough for covariate storage.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

enum class CovariateKind { continuous, categorical };
enum class Family { gaussian, binary };

std::string to_string(CovariateKind kind);
std::string to_string(Family family);
CovariateKind parse_kind(const std::string& text);
Family parse_family(const std::string& text);

// Variable-dimension covariate container. `x(i, l)` is meaningful only where
// `observed(i, l)` is nonzero; readers fill masked cells with NaN.
struct Dataset {
    std::optional<std::vector<double>> y;
    Matrix<double> x;
    Matrix<std::uint8_t> observed;
    std::vector<CovariateKind> kinds;
    std::vector<int> n_levels;  // per covariate; 0 for continuous
    std::vector<std::string> names;

    std::size_t m() const noexcept { return x.rows(); }
    std::size_t p() const noexcept { return x.cols(); }
    bool is_observed(std::size_t i, std::size_t l) const { return observed(i, l) != 0; }

    // Row subset (keeps schema).
    Dataset subset(std::span<const std::size_t> rows) const;
};

// Overwrites every masked cell with `value`. Tests use this to show masked
// cells never reach any output.
void poison_masked(Dataset& data, double value);

struct McmcSchedule {
    int iterations = 50000;
    int burn_in = 25000;
    int thin = 25;
    std::uint64_t seed = 1;
    double step_sigma_star = 0.2;
    double step_sigma0 = 0.2;

    int retained() const noexcept { return (iterations - burn_in) / thin; }
};

struct FixedHyper {
    std::optional<double> mu0;
    std::optional<double> sigma0;
    std::optional<double> sigma_star;
};

struct ModelConfig {
    Family family = Family::gaussian;
    double M = 1.0;
    double sim_v1 = 0.5;
    double sim_mu0 = 0.0;
    double sim_s0sq = 1.0;
    double sim_alpha = 0.1;
    double m0 = 0.0;
    double v_sq = 100.0 * 100.0;
    double a_sigma = 10.0;
    double a_sigma0 = 10.0;
    McmcSchedule mcmc;
    FixedHyper fix;
    // Test hook: replaces every response likelihood term in the label update
    // by a constant so the label sampler targets the partition prior.
    bool flat_likelihood = false;
};

// Throws InvalidConfig on the first violated bound.
void validate_config(const ModelConfig& config);

// Shape, outcome and level checks; throws the matching named error.
void validate(const Dataset& data, const ModelConfig& config);

struct PartitionState {
    std::vector<int> labels;  // 0-based cluster index per unit
    std::vector<double> mu_star;
    std::vector<double> sigma_star;
    double mu0 = 0.0;
    double sigma0 = 1.0;
    std::vector<double> z;  // binary family only

    int k() const noexcept { return static_cast<int>(mu_star.size()); }
    std::vector<int> cluster_sizes() const;
};

// Throws InvariantBreach if labels leave a gap, k > m, or a scale is out of
// its prior support.
void check_state(const PartitionState& state, const ModelConfig& config);

struct AcceptanceCounts {
    long sigma_star_accepted = 0;
    long sigma_star_proposed = 0;
    long sigma0_accepted = 0;
    long sigma0_proposed = 0;

    double sigma_star_rate() const noexcept;
    double sigma0_rate() const noexcept;
};

struct PosteriorDraws {
    std::vector<PartitionState> states;
    // Cumulative counts at the time each state was retained.
    std::vector<AcceptanceCounts> acceptance;

    std::size_t size() const noexcept { return states.size(); }
};

// Per-covariate affine transform; continuous columns only (categorical keep
// center 0, scale 1).
struct Standardization {
    std::vector<double> center;
    std::vector<double> scale;

    Dataset apply(const Dataset& data) const;
    Dataset invert(const Dataset& data) const;
};

struct Standardized {
    Dataset train;
    std::vector<Dataset> others;
    Standardization transform;
};

Standardization fit_standardization(const Dataset& train);
Standardized standardize(const Dataset& train, const std::vector<Dataset>& others);

}  // namespace vdreg
