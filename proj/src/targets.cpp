#include "krrlab/targets.hpp"

#include "krrlab/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace krrlab {

std::string_view target_family_name(TargetFamily family) noexcept
{
    switch (family) {
    case TargetFamily::fourier_sobolev:
        return "fourier_sobolev";
    case TargetFamily::min_eigen:
        return "min_eigen";
    }
    return "unknown";
}

TargetFamily parse_target_family(std::string_view name)
{
    if (name == "fourier_sobolev")
        return TargetFamily::fourier_sobolev;
    if (name == "min_eigen")
        return TargetFamily::min_eigen;
    throw std::invalid_argument("unknown target family '" + std::string(name) + "'");
}

SeriesTarget::SeriesTarget(TargetFamily family, double s, std::size_t terms)
    : family_(family), s_(s)
{
    if (!(s > 0.0))
        throw std::invalid_argument("SeriesTarget: s must be positive");
    if (terms == 0)
        throw std::invalid_argument("SeriesTarget: need at least one term");
    coeffs_.resize(terms);
    for (std::size_t k = 1; k <= terms; ++k)
        coeffs_[k - 1] = std::pow(static_cast<double>(k), -(s + 0.5));
}

SeriesTarget::SeriesTarget(TargetFamily family, double s, std::vector<double> coeffs, int)
    : family_(family), s_(s), coeffs_(std::move(coeffs))
{
    if (coeffs_.empty())
        throw std::invalid_argument("SeriesTarget: need at least one term");
}

SeriesTarget SeriesTarget::with_coefficients(TargetFamily family, double s, std::vector<double> coeffs)
{
    return SeriesTarget(family, s, std::move(coeffs), 0);
}

double SeriesTarget::operator()(double x) const
{
    double sum = 0.0;
    if (family_ == TargetFamily::fourier_sobolev) {
        for (std::size_t k = 1; k <= coeffs_.size(); ++k) {
            const double arg = 2.0 * static_cast<double>(k) * std::numbers::pi * x;
            sum += coeffs_[k - 1] * (std::sin(arg) + std::cos(arg));
        }
    } else {
        // e_{2k-1}(x) = sqrt(2) sin((4k - 3) pi x / 2)
        for (std::size_t k = 1; k <= coeffs_.size(); ++k) {
            const double arg = (4.0 * static_cast<double>(k) - 3.0) * std::numbers::pi / 2.0 * x;
            sum += coeffs_[k - 1] * (std::numbers::sqrt2 * std::sin(arg));
        }
    }
    return sum;
}

double eval_target(const SeriesTarget& t, double x)
{
    return t(x);
}

std::optional<Coefficients> target_coefficients(const SeriesTarget& t)
{
    if (t.family() != TargetFamily::min_eigen)
        return std::nullopt;
    const auto& c = t.coefficients();
    Coefficients a(2 * c.size() - 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k)
        a[2 * k] = c[k];
    return a;
}

DataSet generate_data(const SeriesTarget& t, std::size_t n, double noise_sigma, std::uint64_t seed)
{
    if (n == 0)
        throw std::invalid_argument("generate_data: n must be >= 1");
    if (!(noise_sigma >= 0.0))
        throw std::invalid_argument("generate_data: noise_sigma must be non-negative");

    CounterRng rng(seed);
    DataSet data;
    data.noise_sigma = noise_sigma;
    data.seed = seed;
    data.x.resize(n);
    data.y.resize(n);
    for (auto& xi : data.x)
        xi = rng.uniform();
    for (std::size_t i = 0; i < n; ++i) {
        const double z = rng.normal();
        data.y[i] = t(data.x[i]) + noise_sigma * z;
    }
    return data;
}

} // namespace krrlab
