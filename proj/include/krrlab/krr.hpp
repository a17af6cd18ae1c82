#pragma once

#include "krrlab/kernels.hpp"
#include "krrlab/targets.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace krrlab {

/// Fitted kernel ridge regression estimator
///   f(x) = K(x, X) alpha,  (K(X, X) + n lambda I) alpha = y.
struct KrrModel {
    KernelFn kernel;
    std::vector<double> x_train;
    Eigen::VectorXd alpha;
    double lambda = 0.0;
};

/// Solve (gram + ridge I) alpha = y by Cholesky. If the factorization fails,
/// retry once with 1e-10 * trace(gram) / n added to the diagonal; a second
/// failure throws IllConditionedError.
Eigen::VectorXd solve_regularized(const Eigen::MatrixXd& gram, const Eigen::VectorXd& y, double ridge);

KrrModel fit(const KernelFn& kernel, const DataSet& data, double lambda);

/// As above, reusing a precomputed gram_matrix(kernel, data.x).
KrrModel fit(const KernelFn& kernel, const DataSet& data, const Eigen::MatrixXd& gram, double lambda);

Eigen::VectorXd predict(const KrrModel& model, std::span<const double> x_test);

/// K(x_test, x_train) * coefficients for several coefficient columns at once,
/// evaluated in row blocks so the full cross matrix is never stored.
Eigen::MatrixXd predict_columns(const KernelFn& kernel, std::span<const double> x_train,
                                const Eigen::MatrixXd& coefficients, std::span<const double> x_test);

/// lambda(n) = c * n^(-beta / (s beta + 1)).
struct FixedPower {
    double c = 1.0;
    double s = 0.4;
    double beta = 2.0;
};

/// k-fold cross-validation over a strictly increasing grid.
struct CrossValidation {
    std::vector<double> grid;
    std::size_t folds = 5;
};

using LambdaRule = std::variant<FixedPower, CrossValidation>;

double fixed_power_lambda(const FixedPower& rule, std::size_t n);

/// `points` log-spaced values spanning [lambda_c1(n) / span, lambda_c1(n) * span]
/// around the c = 1 schedule.
std::vector<double> default_cv_grid(std::size_t n, double s, double beta, std::size_t points = 20,
                                    double span = 100.0);

struct CvResult {
    std::vector<double> grid;
    Eigen::MatrixXd fold_scores; ///< grid.size() x folds validation MSEs
    std::vector<double> mean_scores;
    std::size_t best = 0;
    double lambda = 0.0;
};

/// Fold layout: one permutation of 0..n-1 drawn from (seed, folds), cut into
/// contiguous blocks; fold f holds positions [f n / folds, (f + 1) n / folds).
std::vector<std::size_t> cv_permutation(std::size_t n, std::size_t folds, std::uint64_t seed);

/// Score every grid value by mean held-out MSE over the folds; ties go to the
/// smaller lambda. Each fold fit uses its own training size in n lambda.
CvResult cross_validate(const KernelFn& kernel, const DataSet& data, std::span<const double> grid,
                        std::size_t folds);
/// As above with a precomputed gram_matrix(kernel, data.x).
CvResult cross_validate(const DataSet& data, const Eigen::MatrixXd& gram, std::span<const double> grid,
                        std::size_t folds);

double lambda_for(const LambdaRule& rule, std::size_t n, const KernelFn& kernel, const DataSet& data);

} // namespace krrlab
