#include "krrlab/krr.hpp"

#include "krrlab/errors.hpp"
#include "krrlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace krrlab {

namespace {

constexpr Eigen::Index kPredictBlock = 512;

Eigen::Map<const Eigen::VectorXd> as_vector(const std::vector<double>& v)
{
    return {v.data(), static_cast<Eigen::Index>(v.size())};
}

void check_grid(std::span<const double> grid, std::size_t folds)
{
    if (grid.empty())
        throw std::invalid_argument("cross validation: empty lambda grid");
    if (folds < 2)
        throw std::invalid_argument("cross validation: need at least 2 folds");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0))
            throw std::invalid_argument("cross validation: grid values must be positive");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw std::invalid_argument("cross validation: grid must be strictly increasing");
    }
}

} // namespace

Eigen::VectorXd solve_regularized(const Eigen::MatrixXd& gram, const Eigen::VectorXd& y, double ridge)
{
    const Eigen::Index n = gram.rows();
    Eigen::MatrixXd system = gram;
    system.diagonal().array() += ridge;
    Eigen::LLT<Eigen::MatrixXd> llt(system);
    if (llt.info() != Eigen::Success) {
        system.diagonal().array() += 1e-10 * gram.trace() / static_cast<double>(n);
        llt.compute(system);
        if (llt.info() != Eigen::Success)
            throw IllConditionedError("Cholesky factorization of K + n lambda I failed after jitter");
    }
    return llt.solve(y);
}

KrrModel fit(const KernelFn& kernel, const DataSet& data, double lambda)
{
    if (data.size() == 0)
        throw std::invalid_argument("fit: empty data set");
    return fit(kernel, data, gram_matrix(kernel, data.x), lambda);
}

KrrModel fit(const KernelFn& kernel, const DataSet& data, const Eigen::MatrixXd& gram, double lambda)
{
    if (!(lambda > 0.0))
        throw std::invalid_argument("fit: lambda must be positive");
    const std::size_t n = data.size();
    if (n == 0 || data.y.size() != n)
        throw std::invalid_argument("fit: need matching non-empty x and y");
    if (gram.rows() != static_cast<Eigen::Index>(n) || gram.cols() != static_cast<Eigen::Index>(n))
        throw std::invalid_argument("fit: Gram matrix size does not match the data");

    KrrModel model{kernel, data.x, {}, lambda};
    model.alpha = solve_regularized(gram, as_vector(data.y), static_cast<double>(n) * lambda);
    return model;
}

Eigen::MatrixXd predict_columns(const KernelFn& kernel, std::span<const double> x_train,
                                const Eigen::MatrixXd& coefficients, std::span<const double> x_test)
{
    if (coefficients.rows() != static_cast<Eigen::Index>(x_train.size()))
        throw std::invalid_argument("predict: coefficient rows must match training points");
    const auto m = static_cast<Eigen::Index>(x_test.size());
    Eigen::MatrixXd out(m, coefficients.cols());
    for (Eigen::Index start = 0; start < m; start += kPredictBlock) {
        const Eigen::Index len = std::min(kPredictBlock, m - start);
        const Eigen::MatrixXd block = kernel.cross(x_test.subspan(start, len), x_train);
        out.middleRows(start, len).noalias() = block * coefficients;
    }
    return out;
}

Eigen::VectorXd predict(const KrrModel& model, std::span<const double> x_test)
{
    return predict_columns(model.kernel, model.x_train, model.alpha, x_test).col(0);
}

double fixed_power_lambda(const FixedPower& rule, std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("fixed_power_lambda: n must be >= 1");
    if (!(rule.c > 0.0))
        throw std::invalid_argument("fixed_power_lambda: c must be positive");
    const double exponent = -rule.beta / (rule.s * rule.beta + 1.0);
    return rule.c * std::pow(static_cast<double>(n), exponent);
}

std::vector<double> default_cv_grid(std::size_t n, double s, double beta, std::size_t points, double span)
{
    if (points < 2 || !(span > 1.0))
        throw std::invalid_argument("default_cv_grid: need >= 2 points and span > 1");
    const double centre = fixed_power_lambda(FixedPower{1.0, s, beta}, n);
    const double lo = std::log(centre / span);
    const double hi = std::log(centre * span);
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i)
        grid[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1));
    return grid;
}

std::vector<std::size_t> cv_permutation(std::size_t n, std::size_t folds, std::uint64_t seed)
{
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    CounterRng rng(derive_seed(seed, folds, 0x43565f666f6c6473ULL));
    for (std::size_t i = n; i > 1; --i)
        std::swap(perm[i - 1], perm[rng.below(i)]);
    return perm;
}

CvResult cross_validate(const KernelFn& kernel, const DataSet& data, std::span<const double> grid,
                        std::size_t folds)
{
    return cross_validate(data, gram_matrix(kernel, data.x), grid, folds);
}

CvResult cross_validate(const DataSet& data, const Eigen::MatrixXd& gram, std::span<const double> grid,
                        std::size_t folds)
{
    check_grid(grid, folds);
    const std::size_t n = data.size();
    if (gram.rows() != static_cast<Eigen::Index>(n) || gram.cols() != static_cast<Eigen::Index>(n))
        throw std::invalid_argument("cross validation: Gram matrix size does not match the data");
    if (n < folds)
        throw std::invalid_argument("cross validation: fewer samples than folds");

    const std::vector<std::size_t> perm = cv_permutation(n, folds, data.seed);
    const Eigen::Map<const Eigen::VectorXd> y = as_vector(data.y);

    CvResult result;
    result.grid.assign(grid.begin(), grid.end());
    result.fold_scores.resize(static_cast<Eigen::Index>(grid.size()), static_cast<Eigen::Index>(folds));

    for (std::size_t f = 0; f < folds; ++f) {
        const std::size_t lo = f * n / folds;
        const std::size_t hi = (f + 1) * n / folds;
        std::vector<Eigen::Index> train;
        std::vector<Eigen::Index> valid;
        train.reserve(n - (hi - lo));
        valid.reserve(hi - lo);
        for (std::size_t p = 0; p < n; ++p)
            (p >= lo && p < hi ? valid : train).push_back(static_cast<Eigen::Index>(perm[p]));

        const Eigen::MatrixXd k_train = gram(train, train);
        const Eigen::MatrixXd k_valid = gram(valid, train);
        const Eigen::VectorXd y_train = y(train);
        const Eigen::VectorXd y_valid = y(valid);
        const double n_train = static_cast<double>(train.size());

        for (std::size_t g = 0; g < grid.size(); ++g) {
            const Eigen::VectorXd alpha = solve_regularized(k_train, y_train, n_train * grid[g]);
            const Eigen::VectorXd resid = k_valid * alpha - y_valid;
            result.fold_scores(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(f)) =
                resid.squaredNorm() / static_cast<double>(valid.size());
        }
    }

    result.mean_scores.resize(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g)
        result.mean_scores[g] = result.fold_scores.row(static_cast<Eigen::Index>(g)).mean();
    // First strict minimum: the grid is increasing, so ties favour smaller lambda.
    result.best = static_cast<std::size_t>(
        std::min_element(result.mean_scores.begin(), result.mean_scores.end()) -
        result.mean_scores.begin());
    result.lambda = grid[result.best];
    return result;
}

double lambda_for(const LambdaRule& rule, std::size_t n, const KernelFn& kernel, const DataSet& data)
{
    if (const auto* fixed = std::get_if<FixedPower>(&rule))
        return fixed_power_lambda(*fixed, n);
    const auto& cv = std::get<CrossValidation>(rule);
    return cross_validate(kernel, data, cv.grid, cv.folds).lambda;
}

} // namespace krrlab
