#include "vdreg/random.hpp"

#include <numbers>

namespace vdreg {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : engine_(splitmix64(splitmix64(seed) ^ stream)) {}

std::size_t Rng::below(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

std::size_t Rng::categorical(std::span<const double> probs) {
    const double u = uniform();
    double acc = 0.0;
    for (std::size_t h = 0; h < probs.size(); ++h) {
        acc += probs[h];
        if (u < acc) return h;
    }
    // Rounding left u beyond the last cumulative sum.
    for (std::size_t h = probs.size(); h-- > 0;)
        if (probs[h] > 0) return h;
    return probs.size() - 1;
}

// Robert (1995) exponential rejection for lower > 0, plain rejection otherwise.
double Rng::positive_tail(double lower) {
    if (lower <= 0.0) {
        while (true) {
            const double x = normal();
            if (x > lower) return x;
        }
    }
    const double rate = 0.5 * (lower + std::sqrt(lower * lower + 4.0));
    while (true) {
        const double x = lower - std::log1p(-uniform()) / rate;
        const double d = x - rate;
        if (uniform() <= std::exp(-0.5 * d * d)) return x;
    }
}

double Rng::truncated_unit_normal(double mean, bool positive) {
    // z = mean + e with z > 0  <=>  e > -mean; z <= 0  <=>  -e >= mean.
    if (positive) return mean + positive_tail(-mean);
    return mean - positive_tail(mean);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double log_normal_cdf(double x) {
    if (x > -30.0) return std::log(normal_cdf(x));
    // Mills-ratio asymptotic.
    const double x2 = x * x;
    return -0.5 * x2 - std::log(-x) - 0.5 * std::log(2.0 * std::numbers::pi) + std::log1p(-1.0 / x2);
}

}  // namespace vdreg
