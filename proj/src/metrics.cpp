#include "vdreg/metrics.hpp"

#include "vdreg/error.hpp"

namespace vdreg {

namespace {

void check_lengths(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "metric inputs differ in length");
    if (a.empty()) throw Error(ErrorCode::LengthMismatch, "metric inputs are empty");
}

}  // namespace

double mse(std::span<const double> truth, std::span<const double> fitted) {
    check_lengths(truth, fitted);
    double acc = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) acc += (truth[i] - fitted[i]) * (truth[i] - fitted[i]);
    return acc / static_cast<double>(truth.size());
}

double mspe(std::span<const double> truth, std::span<const double> predicted) { return mse(truth, predicted); }

double tjur_r2(std::span<const double> y, std::span<const double> p_hat) {
    check_lengths(y, p_hat);
    double pos = 0.0, neg = 0.0;
    std::size_t n_pos = 0, n_neg = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] == 1.0) {
            pos += p_hat[i];
            ++n_pos;
        } else {
            neg += p_hat[i];
            ++n_neg;
        }
    }
    if (n_pos == 0 || n_neg == 0) throw Error(ErrorCode::Degenerate, "Tjur R2 needs both classes");
    return pos / static_cast<double>(n_pos) - neg / static_cast<double>(n_neg);
}

double pct_correct(std::span<const double> y, std::span<const double> p_hat, double threshold) {
    check_lengths(y, p_hat);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < y.size(); ++i) hits += ((p_hat[i] >= threshold) ? 1.0 : 0.0) == y[i];
    return static_cast<double>(hits) / static_cast<double>(y.size());
}

}  // namespace vdreg
