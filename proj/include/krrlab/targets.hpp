#pragma once

#include "krrlab/spectral.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace krrlab {

enum class TargetFamily {
    fourier_sobolev, ///< sum_k c_k (sin 2k pi x + cos 2k pi x)
    min_eigen,       ///< sum_k c_k e_{2k-1}(x), e_i the min-kernel eigenfunctions
};

std::string_view target_family_name(TargetFamily family) noexcept;
TargetFamily parse_target_family(std::string_view name);

/// Truncated series for an unbounded regression function in [H]^s,
/// with coefficients c_k = k^-(s + 1/2), k = 1..K.
class SeriesTarget {
public:
    static constexpr std::size_t default_terms = 1000;

    SeriesTarget(TargetFamily family, double s, std::size_t terms = default_terms);

    /// Same basis, caller-supplied c_1..c_K (used to probe linearity).
    static SeriesTarget with_coefficients(TargetFamily family, double s, std::vector<double> coeffs);

    TargetFamily family() const noexcept { return family_; }
    double smoothness() const noexcept { return s_; }
    std::size_t terms() const noexcept { return coeffs_.size(); }
    const std::vector<double>& coefficients() const noexcept { return coeffs_; }

    double operator()(double x) const;

private:
    SeriesTarget(TargetFamily family, double s, std::vector<double> coeffs, int);

    TargetFamily family_;
    double s_;
    std::vector<double> coeffs_;
};

/// Truncated-sum value at x; defined on all of [0, 1].
double eval_target(const SeriesTarget& t, double x);

/// Expansion in the min-kernel eigenbasis (entry [2k - 2] = c_k, even indices zero)
/// for min_eigen; std::nullopt for fourier_sobolev, which has no closed-form
/// eigen-expansion.
std::optional<Coefficients> target_coefficients(const SeriesTarget& t);

struct DataSet {
    std::vector<double> x;
    std::vector<double> y;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;

    std::size_t size() const noexcept { return x.size(); }
};

/// x_i ~ U[0, 1] i.i.d. (left in draw order), y_i = f*(x_i) + sigma z_i with
/// z_i standard normal. All randomness comes from CounterRng(seed).
DataSet generate_data(const SeriesTarget& t, std::size_t n, double noise_sigma, std::uint64_t seed);

} // namespace krrlab
