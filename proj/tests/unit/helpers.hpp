#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "vdreg/error.hpp"
#include "vdreg/types.hpp"

namespace vdreg::test {

inline constexpr double NA = std::numeric_limits<double>::quiet_NaN();

// Rows of covariate values; NaN marks a masked entry.
inline Dataset make_data(const std::vector<std::vector<double>>& rows, std::vector<CovariateKind> kinds = {},
                         std::vector<int> levels = {}, std::optional<std::vector<double>> y = {}) {
    const std::size_t m = rows.size();
    const std::size_t p = m ? rows[0].size() : kinds.size();
    Dataset d;
    d.x = Matrix<double>(m, p);
    d.observed = Matrix<std::uint8_t>(m, p, 1);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t l = 0; l < p; ++l) {
            d.x(i, l) = rows[i][l];
            if (std::isnan(rows[i][l])) d.observed(i, l) = 0;
        }
    d.kinds = kinds.empty() ? std::vector<CovariateKind>(p, CovariateKind::continuous) : kinds;
    d.n_levels = levels.empty() ? std::vector<int>(p, 0) : levels;
    for (std::size_t l = 0; l < p; ++l) d.names.push_back("x" + std::to_string(l + 1));
    if (y) d.y = *y;
    return d;
}

// Code of the Error thrown by f; InvariantBreach stands in if nothing is thrown
// and the caller's CHECK then fails on a wrong code.
template <typename F>
ErrorCode error_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvariantBreach;
}

inline ModelConfig short_chain(int iterations = 2000, int burn_in = 1000, int thin = 5, std::uint64_t seed = 7) {
    ModelConfig c;
    c.mcmc.iterations = iterations;
    c.mcmc.burn_in = burn_in;
    c.mcmc.thin = thin;
    c.mcmc.seed = seed;
    return c;
}

}  // namespace vdreg::test
