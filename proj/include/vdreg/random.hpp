#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace vdreg {

// One RNG stream per chain / replicate. Streams are derived from (seed, stream)
// by a SplitMix64 scramble so adjacent seeds do not give correlated engines.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    double uniform() { return unit_(engine_); }                 // [0, 1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal() { return normal_(engine_); }
    double normal(double mean, double sd) { return mean + sd * normal(); }
    bool bernoulli(double p) { return uniform() < p; }
    std::size_t below(std::size_t n);  // uniform index in [0, n)

    /// Index drawn from normalized probabilities.
    std::size_t categorical(std::span<const double> probs);

    /// N(mean, 1) conditioned on > 0 (positive) or <= 0.
    double truncated_unit_normal(double mean, bool positive);

    std::mt19937_64& engine() { return engine_; }

private:
    double positive_tail(double lower);  // N(0,1) | x > lower

    std::mt19937_64 engine_;
    std::uniform_real_distribution<double> unit_{0.0, 1.0};
    std::normal_distribution<double> normal_{0.0, 1.0};
};

double normal_cdf(double x);
double log_normal_cdf(double x);

}  // namespace vdreg
