#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vdreg/types.hpp"

namespace vdreg {

/// log(M * (size - 1)!). Throws EmptyCluster for size 0.
double log_cohesion(int size, double M);

/// Log marginal density of `values` under x_i ~ N(zeta, v1), zeta ~ N(mu0, s0sq),
/// i.e. N(mu0 * 1, v1 * I + s0sq * 11'). Evaluated by the sequential conjugate
/// predictive recursion. The empty list gives 0.
double log_sim_continuous(std::span<const double> values, double v1, double mu0, double s0sq);

/// Dirichlet(alpha,...,alpha)-categorical marginal of a sequence with the
/// given per-level counts. All-zero counts give 0.
double log_sim_categorical(std::span<const int> counts, double alpha);

// Observed entries of one covariate within one cluster.
struct ClusterCovariateView {
    std::vector<double> values;
};

/// One view per covariate for the given cluster members.
std::vector<ClusterCovariateView> cluster_views(std::span<const std::size_t> members, const Dataset& data);

/// Product over covariates of the per-covariate similarity, in log space.
double log_modified_similarity(std::span<const ClusterCovariateView> views, std::span<const CovariateKind> kinds,
                               std::span<const int> n_levels, const ModelConfig& config);

/// Unnormalized log PPMx prior of a 0-based label vector. Throws LabelGap if
/// some index below max(label) is unused.
double log_partition_prior(std::span<const int> labels, const Dataset& data, const ModelConfig& config);

/// Sufficient statistics of one cluster's observed covariates.
struct ClusterSummary {
    int size = 0;
    std::vector<int> n;        // observed count per covariate
    std::vector<double> sum;   // continuous covariates
    std::vector<int> counts;   // categorical level counts, flattened by covariate offset
};

// Incremental form of the modified similarity: everything the sampler and the
// predictor need is "how much does log g change when this row joins".
class SimilarityModel {
public:
    SimilarityModel(std::vector<CovariateKind> kinds, std::vector<int> n_levels, const ModelConfig& config);
    SimilarityModel(const Dataset& schema, const ModelConfig& config);

    std::size_t p() const noexcept { return kinds_.size(); }

    ClusterSummary empty() const;
    void add(ClusterSummary& s, std::span<const double> x, std::span<const std::uint8_t> obs) const;
    void remove(ClusterSummary& s, std::span<const double> x, std::span<const std::uint8_t> obs) const;

    /// log g(S u {x}) - log g(S); missing entries of x contribute nothing.
    double log_increment(const ClusterSummary& s, std::span<const double> x,
                         std::span<const std::uint8_t> obs) const;

    /// Summaries for every cluster of a 0-based label vector.
    std::vector<ClusterSummary> summarize(std::span<const int> labels, int k, const Dataset& data) const;

private:
    std::vector<CovariateKind> kinds_;
    std::vector<int> n_levels_;
    std::vector<int> offset_;
    double v1_, mu0_, s0sq_, alpha_;
};

/// Allocation log weights for one unit given summaries of the other clusters:
/// k entries log|S_h| + log_increment(S_h, x), then log M + log_increment(empty, x).
/// `likelihood`, when given, has k+1 entries added term by term.
std::vector<double> allocation_log_weights(std::span<const ClusterSummary> clusters, std::span<const double> x,
                                           std::span<const std::uint8_t> obs, const SimilarityModel& model,
                                           double M, std::optional<std::span<const double>> likelihood = {});

/// Convenience overload taking explicit member lists of the conditioning partition.
std::vector<double> allocation_log_weights(std::span<const double> x, std::span<const std::uint8_t> obs,
                                           const std::vector<std::vector<std::size_t>>& clusters,
                                           const Dataset& data, const ModelConfig& config,
                                           std::optional<std::span<const double>> likelihood = {});

/// exp-normalize with max subtraction.
std::vector<double> normalize_log_weights(std::span<const double> log_weights);

}  // namespace vdreg
