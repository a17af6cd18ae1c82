#include "krrlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace krrlab {

SimpsonRule::SimpsonRule(std::size_t points)
{
    if (points < 3 || points % 2 == 0)
        throw std::invalid_argument("SimpsonRule: need an odd number of points >= 3, got " +
                                    std::to_string(points));
    const std::size_t intervals = points - 1;
    const double h = 1.0 / static_cast<double>(intervals);
    nodes_.resize(points);
    weights_.resize(points);
    for (std::size_t i = 0; i < points; ++i) {
        nodes_[i] = static_cast<double>(i) * h;
        const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        weights_[i] = w * h / 3.0;
    }
    nodes_.back() = 1.0;
}

double SimpsonRule::integrate(std::span<const double> values) const
{
    if (values.size() != nodes_.size())
        throw std::invalid_argument("SimpsonRule::integrate: value count mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        sum += weights_[i] * values[i];
    return sum;
}

double l2_norm_simpson(const std::function<double(double)>& diff, std::size_t points)
{
    const SimpsonRule rule(points);
    const double integral = rule.integrate_fn([&](double x) {
        const double d = diff(x);
        return d * d;
    });
    return std::sqrt(std::max(integral, 0.0));
}

double l2_error_simpson(const KrrModel& model, const SeriesTarget& target, std::size_t points)
{
    return ErrorMeter(target, points).l2_error(model);
}

ErrorMeter::ErrorMeter(const SeriesTarget& target, std::size_t points) : rule_(points)
{
    target_values_.resize(rule_.size());
    for (std::size_t i = 0; i < rule_.size(); ++i)
        target_values_[i] = target(rule_.nodes()[i]);
}

double ErrorMeter::l2_error(const KrrModel& model) const
{
    return l2_errors(model.kernel, model.x_train, model.alpha).front();
}

std::vector<double> ErrorMeter::l2_errors(const KernelFn& kernel, std::span<const double> x_train,
                                          const Eigen::MatrixXd& coefficients) const
{
    const Eigen::MatrixXd pred = predict_columns(kernel, x_train, coefficients, rule_.nodes());
    std::vector<double> errors(static_cast<std::size_t>(coefficients.cols()));
    const auto& w = rule_.weights();
    for (Eigen::Index c = 0; c < coefficients.cols(); ++c) {
        double sum = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const double d = pred(static_cast<Eigen::Index>(i), c) - target_values_[i];
            sum += w[i] * d * d;
        }
        errors[static_cast<std::size_t>(c)] = std::sqrt(std::max(sum, 0.0));
    }
    return errors;
}

std::size_t default_quadrature_points(std::size_t n_max)
{
    const std::size_t n = 10 * n_max + 1;
    return n % 2 == 1 ? n : n + 1;
}

SweepSummary summarize(std::vector<TrialRecord> records)
{
    std::sort(records.begin(), records.end(), [](const TrialRecord& a, const TrialRecord& b) {
        return a.n != b.n ? a.n < b.n : a.trial < b.trial;
    });

    SweepSummary summary;
    std::size_t begin = 0;
    while (begin < records.size()) {
        std::size_t end = begin;
        while (end < records.size() && records[end].n == records[begin].n)
            ++end;
        const std::size_t count = end - begin;
        if (count < 2)
            throw std::invalid_argument("summarize: n = " + std::to_string(records[begin].n) +
                                        " has fewer than 2 trials");
        // Accumulate offsets from the first value, so identical trials give
        // exactly that value as mean and exactly zero spread.
        const double shift = records[begin].error_l2;
        double offset = 0.0;
        double sum_sq = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            offset += records[i].error_l2 - shift;
            sum_sq += records[i].error_l2 * records[i].error_l2;
        }
        const double mean = shift + offset / static_cast<double>(count);
        double dev = 0.0;
        for (std::size_t i = begin; i < end; ++i)
            dev += (records[i].error_l2 - mean) * (records[i].error_l2 - mean);

        SummaryRow row;
        row.n = records[begin].n;
        row.mean_error = mean;
        row.std_error = std::sqrt(dev / static_cast<double>(count - 1));
        row.mean_sq_error = sum_sq / static_cast<double>(count);
        row.trials = count;
        summary.rows.push_back(row);
        begin = end;
    }
    return summary;
}

RateFit fit_log_log(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size())
        throw std::invalid_argument("fit_log_log: size mismatch");
    if (x.size() < 2)
        throw std::invalid_argument("fit_log_log: need at least 2 points");
    const std::size_t m = x.size();
    std::vector<double> lx(m), ly(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw std::invalid_argument("fit_log_log: values must be positive");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(m);
    my /= static_cast<double>(m);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (!(sxx > 0.0))
        throw std::invalid_argument("fit_log_log: need at least 2 distinct x values");

    RateFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
        rss += r * r;
    }
    fit.rms_residual = std::sqrt(rss / static_cast<double>(m));
    return fit;
}

RateFit fit_rate(const SweepSummary& summary, ErrorScale scale)
{
    std::vector<double> ns, errs;
    for (const auto& row : summary.rows) {
        ns.push_back(static_cast<double>(row.n));
        errs.push_back(scale == ErrorScale::rms ? row.mean_error : row.mean_sq_error);
    }
    return fit_log_log(ns, errs);
}

} // namespace krrlab
