#pragma once

#include <span>

#include "vdreg/partition_prior.hpp"
#include "vdreg/random.hpp"
#include "vdreg/types.hpp"

// Hybrid Gibbs / random-walk Metropolis sampler: Neal's Algorithm 8 with one
// auxiliary component for the labels, conjugate Gibbs for the means, RW
// Metropolis for the scales. Binary outcomes use probit augmentation.
namespace vdreg {

struct ChainDiagnostics {
    AcceptanceCounts acceptance;
    int retained = 0;
    double seconds = 0.0;
};

struct ChainResult {
    PosteriorDraws draws;
    ChainDiagnostics diagnostics;
};

struct NormalMoments {
    double mean;
    double var;
};

/// Full conditional of a cluster mean given n observations summing to `sum`
/// with known noise variance and N(mu0, sigma0^2) prior.
NormalMoments mu_star_conditional(int n, double sum, double noise_var, double mu0, double sigma0);

/// Full conditional of mu0 given the cluster means and prior N(m0, v_sq).
NormalMoments mu0_conditional(std::span<const double> mu_star, double sigma0, double m0, double v_sq);

/// Log acceptance ratio for moving a cluster scale from `current` to
/// `proposal`; -inf when the proposal leaves (0, upper).
double sigma_star_log_ratio(std::span<const double> values, double mu, double current, double proposal,
                            double upper);
double sigma0_log_ratio(std::span<const double> mu_star, double mu0, double current, double proposal, double upper);

/// Accept iff log(u) < log_ratio.
bool metropolis_accept(double log_ratio, double u);

PartitionState init_state(const Dataset& data, const ModelConfig& config, Rng& rng);

void update_labels(PartitionState& state, const Dataset& data, const ModelConfig& config, Rng& rng);
void update_mu_star(PartitionState& state, const Dataset& data, const ModelConfig& config, Rng& rng);
void update_sigma_star(PartitionState& state, const Dataset& data, const ModelConfig& config, Rng& rng,
                       AcceptanceCounts& counts);
void update_hyper(PartitionState& state, const ModelConfig& config, Rng& rng, AcceptanceCounts& counts);
void update_latent_probit(PartitionState& state, const Dataset& data, Rng& rng);

/// One full sweep in the fixed order labels, (latent), mu_star, sigma_star, hyper.
void sweep(PartitionState& state, const Dataset& data, const ModelConfig& config, Rng& rng,
           AcceptanceCounts& counts);

/// Validates, initializes and runs the schedule in `config.mcmc`. `stream`
/// selects an independent RNG stream for replicate chains.
ChainResult run_chain(const Dataset& data, const ModelConfig& config, std::uint64_t stream = 0);

}  // namespace vdreg
