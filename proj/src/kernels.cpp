#include "krrlab/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace krrlab {

namespace {

void check_domain(double t)
{
    if (!(t >= 0.0 && t <= 1.0))
        throw std::domain_error("kernel argument outside [0, 1]: " + std::to_string(t));
}

const double kInvSinh1 = 1.0 / std::sinh(1.0);

} // namespace

std::string_view kernel_kind_name(KernelKind kind) noexcept
{
    switch (kind) {
    case KernelKind::sobolev_h1:
        return "sobolev_h1";
    case KernelKind::first_order_min:
        return "first_order_min";
    case KernelKind::truncated_mercer:
        return "truncated_mercer";
    }
    return "unknown";
}

KernelKind parse_kernel_kind(std::string_view name)
{
    if (name == "sobolev_h1")
        return KernelKind::sobolev_h1;
    if (name == "first_order_min")
        return KernelKind::first_order_min;
    if (name == "truncated_mercer")
        return KernelKind::truncated_mercer;
    throw std::invalid_argument("unknown kernel '" + std::string(name) + "'");
}

KernelFn KernelFn::sobolev_h1()
{
    return KernelFn(KernelKind::sobolev_h1, std::nullopt, 0);
}

KernelFn KernelFn::first_order_min()
{
    return KernelFn(KernelKind::first_order_min, std::nullopt, 0);
}

KernelFn KernelFn::truncated_mercer(SpectralModel model, std::size_t terms)
{
    if (terms == 0)
        throw std::invalid_argument("truncated_mercer: need at least one term");
    return KernelFn(KernelKind::truncated_mercer, std::move(model), terms);
}

std::optional<SpectralModel> KernelFn::spectral_model() const
{
    switch (kind_) {
    case KernelKind::first_order_min:
        return SpectralModel::first_order_min();
    case KernelKind::truncated_mercer:
        return model_;
    case KernelKind::sobolev_h1:
        break;
    }
    return std::nullopt;
}

double KernelFn::left_factor(double t) const noexcept
{
    return kind_ == KernelKind::sobolev_h1 ? std::cosh(t) : t;
}

double KernelFn::right_factor(double t) const noexcept
{
    return kind_ == KernelKind::sobolev_h1 ? std::cosh(1.0 - t) * kInvSinh1 : 1.0;
}

double KernelFn::operator()(double x, double y) const
{
    check_domain(x);
    check_domain(y);
    if (kind_ == KernelKind::truncated_mercer)
        return mercer_partial_sum(*model_, terms_, x, y);
    const double lo = std::min(x, y);
    const double hi = std::max(x, y);
    return left_factor(lo) * right_factor(hi);
}

double KernelFn::sup_diagonal() const
{
    switch (kind_) {
    case KernelKind::sobolev_h1:
        // cosh(x) cosh(1 - x) / sinh(1) is maximal at the endpoints.
        return std::cosh(1.0) * kInvSinh1;
    case KernelKind::first_order_min:
        return 1.0;
    case KernelKind::truncated_mercer: {
        double sum = 0.0;
        for (std::size_t i = 1; i <= terms_; ++i)
            sum += model_->eigenvalue(i);
        const double sup = model_->eigenfunction_sup();
        return sup * sup * sum;
    }
    }
    return 0.0;
}

Eigen::MatrixXd KernelFn::cross(std::span<const double> xs, std::span<const double> ys) const
{
    for (double t : xs)
        check_domain(t);
    for (double t : ys)
        check_domain(t);

    const auto rows = static_cast<Eigen::Index>(xs.size());
    const auto cols = static_cast<Eigen::Index>(ys.size());
    Eigen::MatrixXd out(rows, cols);

    if (kind_ == KernelKind::truncated_mercer) {
        for (Eigen::Index j = 0; j < cols; ++j)
            for (Eigen::Index i = 0; i < rows; ++i)
                out(i, j) = mercer_partial_sum(*model_, terms_, xs[i], ys[j]);
        return out;
    }

    std::vector<double> ux(xs.size()), vx(xs.size()), uy(ys.size()), vy(ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        ux[i] = left_factor(xs[i]);
        vx[i] = right_factor(xs[i]);
    }
    for (std::size_t j = 0; j < ys.size(); ++j) {
        uy[j] = left_factor(ys[j]);
        vy[j] = right_factor(ys[j]);
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
        const double y = ys[j];
        for (Eigen::Index i = 0; i < rows; ++i)
            out(i, j) = xs[i] <= y ? ux[i] * vy[j] : uy[j] * vx[i];
    }
    return out;
}

Eigen::VectorXd KernelFn::features(double x) const
{
    if (kind_ != KernelKind::truncated_mercer)
        throw std::logic_error("features: only truncated_mercer kernels have a finite feature map");
    check_domain(x);
    Eigen::VectorXd phi(static_cast<Eigen::Index>(terms_));
    for (std::size_t i = 1; i <= terms_; ++i)
        phi[static_cast<Eigen::Index>(i - 1)] =
            std::sqrt(model_->eigenvalue(i)) * model_->eigenfunction(i, x);
    return phi;
}

double eval_kernel(const KernelFn& k, double x, double y)
{
    return k(x, y);
}

Eigen::MatrixXd gram_matrix(const KernelFn& k, std::span<const double> xs)
{
    if (xs.empty())
        throw std::invalid_argument("gram_matrix: need at least one point");
    const auto n = static_cast<Eigen::Index>(xs.size());
    Eigen::MatrixXd g = k.cross(xs, xs);
    // cross() already evaluates each entry with the same formula as k(x, y);
    // mirroring makes symmetry exact regardless.
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = j + 1; i < n; ++i)
            g(i, j) = g(j, i);
    return g;
}

} // namespace krrlab
