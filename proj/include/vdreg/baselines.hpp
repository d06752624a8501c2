#pragma once

#include <vector>

#include "vdreg/types.hpp"

// Least-squares stand-ins for external comparison methods. Both expect
// standardized covariates, so a missing entry imputed by its training mean is 0.
namespace vdreg {

struct BaselineFit {
    std::vector<double> fitted;     // training rows
    std::vector<double> predicted;  // test rows
};

/// OLS on complete training rows; missing test covariates enter at their
/// training mean. Throws NoCompleteCases when fewer than p+1 complete rows.
BaselineFit complete_case_ols(const Dataset& train, const Dataset& test);

/// Column-mean imputation in train and test, then OLS on all training rows.
BaselineFit mean_imputation_ols(const Dataset& train, const Dataset& test);

}  // namespace vdreg
