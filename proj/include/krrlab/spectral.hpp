#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace krrlab {

/// Coefficients of a function in an L2-orthonormal eigenbasis.
/// Entry [i - 1] multiplies the i-th eigenfunction e_i (eigen-indices are 1-based).
using Coefficients = std::vector<double>;

/**
 * Closed-form Mercer data of an integral operator on L2([0,1], uniform).
 *
 * Eigenvalues follow a shifted power law
 *
 *     lambda_i = scale * (i + shift)^(-beta),   i = 1, 2, ...
 *
 * and eigenfunctions are the half-wave sines e_i(x) = sqrt(2) sin((2i - 1) pi x / 2),
 * uniformly bounded by sqrt(2). The first-order min kernel k(x, y) = min(x, y) is
 * the shift = -1/2, scale = 1/pi^2, beta = 2 member. Other members are synthetic
 * spectra used for testing the series routines.
 *
 * Because the eigenvalue rule extends to real indices, tails of series in
 * lambda_i can be bracketed by integrals with closed forms.
 */
class SpectralModel {
public:
    /// Eigenpairs of k(x, y) = min(x, y) on [0, 1].
    static SpectralModel first_order_min();

    /// lambda_i = scale * i^(-beta) with the half-sine eigenfunctions.
    static SpectralModel power_law(double scale, double beta);

    double eigenvalue(std::size_t i) const;
    /// The eigenvalue rule at a real index t (t + shift > 0).
    double eigenvalue_at(double t) const noexcept;
    double eigenfunction(std::size_t i, double x) const;

    double eigenfunction_sup() const noexcept;
    double decay() const noexcept { return beta_; }
    const std::string& label() const noexcept { return label_; }

    /// Smallest C with lambda_i <= C i^(-beta) for every i >= 1.
    double upper_decay_constant() const;

    /// min over i in [first, last] of lambda_i * i^beta.
    double lower_decay_constant(std::size_t first, std::size_t last) const;

    /// Upper bound on sum_{i > m} lambda_i (integral of the eigenvalue rule over [m, inf)).
    double eigenvalue_tail_bound(std::size_t m) const;

    /// Closed form of the integral over t in [from, inf) of lambda(t) / (lambda(t) + reg),
    /// where lambda(t) is the eigenvalue rule at real index t.
    double ratio_tail_integral(double reg, double from) const;

private:
    SpectralModel(std::string label, double scale, double shift, double beta);

    std::string label_;
    double scale_;
    double shift_;
    double beta_;
};

/// sum_{i <= m} lambda_i e_i(x) e_i(y).
double mercer_partial_sum(const SpectralModel& model, std::size_t m, double x, double y);

/// Uniform bound on |mercer_partial_sum(m) - k|: sup|e|^2 * sum_{i > m} lambda_i.
double mercer_truncation_bound(const SpectralModel& model, std::size_t m);

/**
 * Effective dimension N(lambda) = sum_i lambda_i / (lambda_i + lambda).
 *
 * With g(t) = lambda(t) / (lambda(t) + lambda) the terms are g(i), and g is
 * convex in t once g <= (beta + 1) / (2 beta). Past that point, the tail
 * after index I is bracketed by convexity:
 *
 *     int_{I+1}^inf g + g(I + 1) / 2  <=  sum_{i > I} g(i)  <=  int_{I+1/2}^inf g
 *
 * with width at most (g(I + 1/2) - g(I + 1)) / 4. Terms are summed exactly
 * until that width is <= 2 * tail_tol, and the bracket midpoint stands in
 * for the tail, so the returned value is within tail_tol of the full series.
 */
double effective_dimension(const SpectralModel& model, double lambda, double tail_tol = 1e-10);

/// sum_{i <= m} lambda_i^alpha e_i(x)^2; its supremum over x and m is M_alpha^2.
double embedding_constant_partial(const SpectralModel& model, double alpha, double x, std::size_t m);

/// Coefficients of f_lambda = (T + lambda)^{-1} T f: b_i = lambda_i / (lambda_i + lambda) a_i.
Coefficients spectral_f_lambda(const SpectralModel& model, std::span<const double> a, double lambda);

/// ||f_lambda - f||_{[H]^gamma} = sqrt(sum (lambda / (lambda + lambda_i))^2 lambda_i^(-gamma) a_i^2).
/// gamma = 0 gives the L2 approximation error.
double approximation_error(const SpectralModel& model, std::span<const double> a, double lambda,
                           double gamma);

/// ||f||_{[H]^s} = sqrt(sum lambda_i^(-s) a_i^2).
double interpolation_norm(const SpectralModel& model, std::span<const double> a, double s);

/// L2 distance between two expansions (Parseval). Shorter arrays are zero-padded.
double coefficient_distance(std::span<const double> a, std::span<const double> b);

/// Evaluate sum a_i e_i(x).
double evaluate_expansion(const SpectralModel& model, std::span<const double> a, double x);

} // namespace krrlab
