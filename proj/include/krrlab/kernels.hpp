#pragma once

#include "krrlab/spectral.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace krrlab {

enum class KernelKind { sobolev_h1, first_order_min, truncated_mercer };

std::string_view kernel_kind_name(KernelKind kind) noexcept;
/// Accepts the canonical identifiers; throws std::invalid_argument otherwise.
KernelKind parse_kernel_kind(std::string_view name);

/**
 * A reproducing kernel on [0, 1].
 *
 * sobolev_h1 and first_order_min are Green's functions of second-order
 * boundary value problems and share the "min-max separable" form
 * k(x, y) = u(min(x, y)) v(max(x, y)):
 *
 *   sobolev_h1       u(t) = cosh(t),  v(t) = cosh(1 - t) / sinh(1)
 *   first_order_min  u(t) = t,        v(t) = 1
 *
 * which keeps bulk evaluation to one multiply per entry. truncated_mercer is
 * the rank-M kernel sum_{i <= M} lambda_i e_i(x) e_i(y) of a SpectralModel,
 * used as a finite-dimensional oracle for the representer theorem.
 */
class KernelFn {
public:
    static KernelFn sobolev_h1();
    static KernelFn first_order_min();
    static KernelFn truncated_mercer(SpectralModel model, std::size_t terms = 32);

    KernelKind kind() const noexcept { return kind_; }

    /// Closed-form eigenpairs when the kernel has them (not for sobolev_h1).
    std::optional<SpectralModel> spectral_model() const;

    /// Number of Mercer terms of a truncated_mercer kernel, 0 otherwise.
    std::size_t mercer_terms() const noexcept { return terms_; }

    /// k(x, y). Throws std::domain_error outside [0, 1].
    double operator()(double x, double y) const;

    /// kappa^2 = sup_x k(x, x).
    double sup_diagonal() const;

    /// Matrix (k(x_i, y_j)) of size |xs| x |ys|.
    Eigen::MatrixXd cross(std::span<const double> xs, std::span<const double> ys) const;

    /// Feature vector (sqrt(lambda_i) e_i(x))_{i <= M}; truncated_mercer only.
    Eigen::VectorXd features(double x) const;

private:
    KernelFn(KernelKind kind, std::optional<SpectralModel> model, std::size_t terms)
        : kind_(kind), model_(std::move(model)), terms_(terms) {}

    double left_factor(double t) const noexcept;
    double right_factor(double t) const noexcept;

    KernelKind kind_;
    std::optional<SpectralModel> model_;
    std::size_t terms_ = 0;
};

double eval_kernel(const KernelFn& k, double x, double y);

/// Symmetric Gram matrix K(X, X); upper triangle computed, lower mirrored.
Eigen::MatrixXd gram_matrix(const KernelFn& k, std::span<const double> xs);

} // namespace krrlab
