#include "vdreg/baselines.hpp"

#include <Eigen/Dense>

namespace vdreg {

namespace {

// Design row [1, x_1..x_p] with missing cells replaced by `fill[l]`.
Eigen::MatrixXd design(const Dataset& d, const std::vector<double>& fill) {
    Eigen::MatrixXd X(static_cast<Eigen::Index>(d.m()), static_cast<Eigen::Index>(d.p() + 1));
    for (std::size_t i = 0; i < d.m(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        X(r, 0) = 1.0;
        for (std::size_t l = 0; l < d.p(); ++l)
            X(r, static_cast<Eigen::Index>(l + 1)) = d.is_observed(i, l) ? d.x(i, l) : fill[l];
    }
    return X;
}

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

std::vector<double> observed_means(const Dataset& d) {
    std::vector<double> means(d.p(), 0.0);
    for (std::size_t l = 0; l < d.p(); ++l) {
        double s = 0.0;
        std::size_t n = 0;
        for (std::size_t i = 0; i < d.m(); ++i)
            if (d.is_observed(i, l)) {
                s += d.x(i, l);
                ++n;
            }
        means[l] = n ? s / static_cast<double>(n) : 0.0;
    }
    return means;
}

Eigen::VectorXd response(const Dataset& d) {
    if (!d.y) throw Error(ErrorCode::BadOutcome, "baseline needs training responses");
    return Eigen::Map<const Eigen::VectorXd>(d.y->data(), static_cast<Eigen::Index>(d.y->size()));
}

}  // namespace

BaselineFit complete_case_ols(const Dataset& train, const Dataset& test) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < train.m(); ++i) {
        bool complete = true;
        for (std::size_t l = 0; l < train.p(); ++l) complete = complete && train.is_observed(i, l);
        if (complete) rows.push_back(i);
    }
    if (rows.size() < train.p() + 1)
        throw Error(ErrorCode::NoCompleteCases, "only " + std::to_string(rows.size()) + " complete training rows");
    const Dataset cc = train.subset(rows);
    const auto fill = observed_means(train);
    const Eigen::VectorXd beta = design(cc, fill).colPivHouseholderQr().solve(response(cc));
    return {to_vector(design(train, fill) * beta), to_vector(design(test, fill) * beta)};
}

BaselineFit mean_imputation_ols(const Dataset& train, const Dataset& test) {
    const auto fill = observed_means(train);
    const Eigen::MatrixXd X = design(train, fill);
    const Eigen::VectorXd beta = X.colPivHouseholderQr().solve(response(train));
    return {to_vector(X * beta), to_vector(design(test, fill) * beta)};
}

}  // namespace vdreg
