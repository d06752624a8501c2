#pragma once

#include <span>
#include <string>

namespace vdreg {

struct MetricReport {
    std::string metric;
    double value = 0.0;
    std::size_t n = 0;
};

double mse(std::span<const double> truth, std::span<const double> fitted);
double mspe(std::span<const double> truth, std::span<const double> predicted);

/// mean(p | y = 1) - mean(p | y = 0); Degenerate if one class is absent.
double tjur_r2(std::span<const double> y, std::span<const double> p_hat);

/// Fraction of rows with 1{p >= threshold} == y; ties go to class 1.
double pct_correct(std::span<const double> y, std::span<const double> p_hat, double threshold = 0.5);

}  // namespace vdreg
