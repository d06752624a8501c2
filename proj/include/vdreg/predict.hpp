#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vdreg/types.hpp"

namespace vdreg {

struct PredictionResult {
    std::vector<double> point;  // mean (gaussian) or P(y = 1) (binary)
    std::vector<double> sd;     // spread of the per-draw predictions
    // per_draw[t][r]: prediction for test row r under retained draw t.
    std::vector<std::vector<double>> per_draw;
};

/// Allocation probabilities (k+1 entries, new cluster last) of a new subject
/// under one posterior draw; covariate-only, no likelihood terms.
std::vector<double> predictive_weights(const PartitionState& draw, const Dataset& train, std::span<const double> x_new,
                                       std::span<const std::uint8_t> obs_new, const ModelConfig& config);

/// Posterior predictive point prediction averaged over draws. `test` must be
/// on the training scale and share its covariate schema.
PredictionResult predict_point(const PosteriorDraws& draws, const Dataset& train, const Dataset& test,
                               const ModelConfig& config);

/// In-sample fitted values: average of mu_star (or Phi(mu_star)) of each unit's cluster.
std::vector<double> fitted_values(const PosteriorDraws& draws, const Dataset& train, Family family);

}  // namespace vdreg
