#pragma once

#include "krrlab/krr.hpp"
#include "krrlab/targets.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace krrlab {

/// Composite Simpson rule on [0, 1] with `points` equally spaced nodes
/// (odd, >= 3, both endpoints included).
class SimpsonRule {
public:
    explicit SimpsonRule(std::size_t points);

    std::size_t size() const noexcept { return nodes_.size(); }
    const std::vector<double>& nodes() const noexcept { return nodes_; }
    const std::vector<double>& weights() const noexcept { return weights_; }

    double integrate(std::span<const double> values) const;

    template <class F>
    double integrate_fn(F&& f) const
    {
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            sum += weights_[i] * f(nodes_[i]);
        return sum;
    }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

/// sqrt of the Simpson estimate of the integral over [0, 1] of diff(x)^2.
double l2_norm_simpson(const std::function<double(double)>& diff, std::size_t points);

/// ||f_hat - f*||_{L2} by composite Simpson with `points` nodes.
double l2_error_simpson(const KrrModel& model, const SeriesTarget& target, std::size_t points);

/// Simpson grid with the target pre-evaluated, for measuring many fits
/// against the same f*.
class ErrorMeter {
public:
    ErrorMeter(const SeriesTarget& target, std::size_t points);

    std::size_t points() const noexcept { return rule_.size(); }

    double l2_error(const KrrModel& model) const;

    /// One L2 error per coefficient column (models sharing kernel and inputs).
    std::vector<double> l2_errors(const KernelFn& kernel, std::span<const double> x_train,
                                  const Eigen::MatrixXd& coefficients) const;

private:
    SimpsonRule rule_;
    std::vector<double> target_values_;
};

/// N = 10 n_max + 1, bumped to the next odd integer.
std::size_t default_quadrature_points(std::size_t n_max);

struct TrialRecord {
    std::size_t n = 0;
    std::size_t trial = 0;
    double lambda = 0.0;
    double error_l2 = 0.0; ///< RMS norm ||f_hat - f*||_{L2}
};

struct SummaryRow {
    std::size_t n = 0;
    double mean_error = 0.0;
    double std_error = 0.0;     ///< sample standard deviation, n - 1 denominator
    double mean_sq_error = 0.0; ///< mean of error_l2^2
    std::size_t trials = 0;
};

struct SweepSummary {
    std::vector<SummaryRow> rows; ///< ascending n
};

/// Per-n aggregates. Records are sorted by (n, trial) first, so the result
/// does not depend on input order. Throws if some n has fewer than 2 trials.
SweepSummary summarize(std::vector<TrialRecord> records);

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
};

/// Which summary column a rate is fitted to.
enum class ErrorScale { rms, squared };

/// Ordinary least squares of log(y) on log(x).
RateFit fit_log_log(std::span<const double> x, std::span<const double> y);

/// log(error) = r log(n) + b over the summary rows.
RateFit fit_rate(const SweepSummary& summary, ErrorScale scale = ErrorScale::rms);

} // namespace krrlab
