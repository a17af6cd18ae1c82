#include "krrlab/spectral.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace krrlab {

namespace {

// Neumaier compensated summation; the effective-dimension series can run to
// ~1e5 terms at small lambda.
class CompensatedSum {
public:
    void add(double v) noexcept
    {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            carry_ += (sum_ - t) + v;
        else
            carry_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

constexpr std::size_t kMaxSeriesTerms = std::size_t{1} << 31;

} // namespace

SpectralModel::SpectralModel(std::string label, double scale, double shift, double beta)
    : label_(std::move(label)), scale_(scale), shift_(shift), beta_(beta)
{
    if (!(scale > 0.0))
        throw std::invalid_argument("SpectralModel: scale must be positive");
    if (!(beta > 1.0))
        throw std::invalid_argument("SpectralModel: decay exponent must exceed 1");
    if (!(shift > -1.0))
        throw std::invalid_argument("SpectralModel: shift must exceed -1");
}

SpectralModel SpectralModel::first_order_min()
{
    // ((2i - 1) pi / 2)^-2 = pi^-2 (i - 1/2)^-2
    return SpectralModel("first_order_min", 1.0 / (std::numbers::pi * std::numbers::pi), -0.5, 2.0);
}

SpectralModel SpectralModel::power_law(double scale, double beta)
{
    return SpectralModel("power_law", scale, 0.0, beta);
}

double SpectralModel::eigenvalue_at(double t) const noexcept
{
    return scale_ * std::pow(t + shift_, -beta_);
}

double SpectralModel::eigenvalue(std::size_t i) const
{
    if (i == 0)
        throw std::invalid_argument("SpectralModel::eigenvalue: indices start at 1");
    return eigenvalue_at(static_cast<double>(i));
}

double SpectralModel::eigenfunction(std::size_t i, double x) const
{
    if (i == 0)
        throw std::invalid_argument("SpectralModel::eigenfunction: indices start at 1");
    const double freq = (2.0 * static_cast<double>(i) - 1.0) * std::numbers::pi / 2.0;
    return std::numbers::sqrt2 * std::sin(freq * x);
}

double SpectralModel::eigenfunction_sup() const noexcept
{
    return std::numbers::sqrt2;
}

double SpectralModel::upper_decay_constant() const
{
    // lambda_i i^beta = scale (i / (i + shift))^beta: decreasing in i for
    // shift < 0, increasing towards scale otherwise.
    if (shift_ < 0.0)
        return scale_ * std::pow(1.0 / (1.0 + shift_), beta_);
    return scale_;
}

double SpectralModel::lower_decay_constant(std::size_t first, std::size_t last) const
{
    if (first == 0 || last < first)
        throw std::invalid_argument("lower_decay_constant: need 1 <= first <= last");
    double c = std::numeric_limits<double>::infinity();
    for (std::size_t i = first; i <= last; ++i)
        c = std::min(c, eigenvalue(i) * std::pow(static_cast<double>(i), beta_));
    return c;
}

double SpectralModel::eigenvalue_tail_bound(std::size_t m) const
{
    if (m == 0)
        throw std::invalid_argument("eigenvalue_tail_bound: m must be >= 1");
    return scale_ * std::pow(static_cast<double>(m) + shift_, 1.0 - beta_) / (beta_ - 1.0);
}

double SpectralModel::ratio_tail_integral(double reg, double from) const
{
    if (!(reg > 0.0))
        throw std::invalid_argument("ratio_tail_integral: regularization must be positive");
    if (!(from + shift_ > 0.0))
        throw std::invalid_argument("ratio_tail_integral: lower limit outside the eigenvalue rule");
    // Integrand 1 / (1 + g^beta (t + shift)^beta) with g = (reg / scale)^(1/beta).
    // With v = g (t + shift) and w = 1 / (1 + v^beta) the integral becomes
    // (1 / (g beta)) * B_w(1 - 1/beta, 1/beta), an incomplete beta function.
    const double g = std::pow(reg / scale_, 1.0 / beta_);
    const double v0 = g * (from + shift_);
    const double w0 = 1.0 / (1.0 + std::pow(v0, beta_));
    const double p = 1.0 / beta_;
    return boost::math::beta(1.0 - p, p, w0) / (g * beta_);
}

double mercer_partial_sum(const SpectralModel& model, std::size_t m, double x, double y)
{
    if (m == 0)
        throw std::invalid_argument("mercer_partial_sum: m must be >= 1");
    double sum = 0.0;
    for (std::size_t i = 1; i <= m; ++i)
        sum += model.eigenvalue(i) * (model.eigenfunction(i, x) * model.eigenfunction(i, y));
    return sum;
}

double mercer_truncation_bound(const SpectralModel& model, std::size_t m)
{
    const double sup = model.eigenfunction_sup();
    return sup * sup * model.eigenvalue_tail_bound(m);
}

double effective_dimension(const SpectralModel& model, double lambda, double tail_tol)
{
    if (!(lambda > 0.0))
        throw std::invalid_argument("effective_dimension: lambda must be positive");
    if (!(tail_tol > 0.0))
        throw std::invalid_argument("effective_dimension: tail_tol must be positive");

    const double beta = model.decay();
    const double convex_from = (beta + 1.0) / (2.0 * beta);
    auto g = [&](double t) {
        const double l = model.eigenvalue_at(t);
        return l / (l + lambda);
    };

    CompensatedSum sum;
    for (std::size_t i = 1;; ++i) {
        if (i >= kMaxSeriesTerms)
            throw std::invalid_argument("effective_dimension: tail_tol too tight for this lambda");
        const double t = static_cast<double>(i);
        const double term = g(t);
        sum.add(term);
        if (term > convex_from)
            continue;
        const double next = g(t + 1.0);
        if ((g(t + 0.5) - next) / 4.0 > 2.0 * tail_tol)
            continue;
        const double upper = model.ratio_tail_integral(lambda, t + 0.5);
        const double lower = model.ratio_tail_integral(lambda, t + 1.0) + 0.5 * next;
        sum.add(0.5 * (upper + lower));
        return sum.value();
    }
}

double embedding_constant_partial(const SpectralModel& model, double alpha, double x, std::size_t m)
{
    if (!(alpha > 0.0))
        throw std::invalid_argument("embedding_constant_partial: alpha must be positive");
    if (m == 0)
        throw std::invalid_argument("embedding_constant_partial: m must be >= 1");
    CompensatedSum sum;
    for (std::size_t i = 1; i <= m; ++i) {
        const double e = model.eigenfunction(i, x);
        sum.add(std::pow(model.eigenvalue(i), alpha) * e * e);
    }
    return sum.value();
}

Coefficients spectral_f_lambda(const SpectralModel& model, std::span<const double> a, double lambda)
{
    if (!(lambda > 0.0))
        throw std::invalid_argument("spectral_f_lambda: lambda must be positive");
    Coefficients b(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double li = model.eigenvalue(k + 1);
        b[k] = li / (li + lambda) * a[k];
    }
    return b;
}

double approximation_error(const SpectralModel& model, std::span<const double> a, double lambda,
                           double gamma)
{
    if (!(lambda > 0.0))
        throw std::invalid_argument("approximation_error: lambda must be positive");
    if (!(gamma >= 0.0))
        throw std::invalid_argument("approximation_error: gamma must be non-negative");
    CompensatedSum sum;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] == 0.0)
            continue;
        const double li = model.eigenvalue(k + 1);
        const double shrink = lambda / (lambda + li);
        const double weight = gamma == 0.0 ? 1.0 : std::pow(li, -gamma);
        sum.add(shrink * shrink * weight * a[k] * a[k]);
    }
    return std::sqrt(sum.value());
}

double interpolation_norm(const SpectralModel& model, std::span<const double> a, double s)
{
    CompensatedSum sum;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] == 0.0)
            continue;
        sum.add(std::pow(model.eigenvalue(k + 1), -s) * a[k] * a[k]);
    }
    return std::sqrt(sum.value());
}

double coefficient_distance(std::span<const double> a, std::span<const double> b)
{
    const std::size_t n = std::max(a.size(), b.size());
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double d = (k < a.size() ? a[k] : 0.0) - (k < b.size() ? b[k] : 0.0);
        sum += d * d;
    }
    return std::sqrt(sum);
}

double evaluate_expansion(const SpectralModel& model, std::span<const double> a, double x)
{
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] != 0.0)
            sum += a[k] * model.eigenfunction(k + 1, x);
    }
    return sum;
}

} // namespace krrlab
