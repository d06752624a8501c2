#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "vdreg/types.hpp"

// Brute-force ground truth by exhaustive enumeration of set partitions. Shares
// no arithmetic with the main path: continuous marginals use the dense
// covariance form and categorical marginals use rising-factorial products.
namespace vdreg::oracle {

inline constexpr int kMaxUnits = 10;

// Restricted growth string: labels[0] = 0 and labels[i] <= 1 + max(labels[0..i-1]).
using Partition = std::vector<int>;

/// All B(m) partitions of m units in lexicographic RGS order. Throws TooLarge for m > 10.
std::vector<Partition> enumerate_partitions(int m);

/// Relabels clusters by order of first appearance.
Partition canonical(std::span<const int> labels);

struct PartitionTable {
    std::vector<Partition> partitions;
    std::vector<double> log_prob;  // normalized
    std::vector<double> prob;

    std::size_t size() const noexcept { return partitions.size(); }
    std::size_t index_of(std::span<const int> labels) const;

    std::map<Partition, std::size_t> index;
};

double dense_log_sim_continuous(std::span<const double> values, double v1, double mu0, double s0sq);
double rising_log_sim_categorical(std::span<const int> counts, double alpha);
double loop_log_cohesion(int size, double M);

/// Independent unnormalized log PPMx prior.
double log_prior_unnormalized(std::span<const int> labels, const Dataset& data, const ModelConfig& config);

PartitionTable exact_prior(const Dataset& data, const ModelConfig& config);

/// Prior x product of exact Gaussian cluster marginals with mu_star integrated
/// against N(mu0, sigma0^2) and known sigma_star. Needs all three pins
/// (MissingPins otherwise) and m <= 8.
PartitionTable exact_posterior_fixed(const Dataset& data, const ModelConfig& config);

/// Predictive allocation probabilities of a new row given a conditioning
/// partition (0-based labels over the rows of `data`), k+1 entries.
std::vector<double> exact_allocation(std::span<const double> x, std::span<const std::uint8_t> obs,
                                     std::span<const int> labels, const Dataset& data, const ModelConfig& config);

double total_variation(std::span<const double> p, std::span<const double> q);

}  // namespace vdreg::oracle
