#pragma once

#include "krrlab/analysis.hpp"
#include "krrlab/lowerbound.hpp"
#include "krrlab/spectral.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace krrlab {

/// Spectral models addressable by name from the command line. Only kernels
/// with closed-form eigenpairs qualify; throws std::invalid_argument otherwise.
SpectralModel spectral_model_by_name(std::string_view name);

struct SpectralReportOptions {
    std::string model = "first_order_min";
    double lambda_min = 1e-6;
    double lambda_max = 1e-2;
    std::size_t points = 9;
    std::vector<double> alphas{0.4, 0.6, 1.0};
    double x = 1.0;              ///< where embedding partial sums are taken
    std::size_t max_terms_log2 = 16;
    double tail_tol = 1e-10;
};

struct SpectralReport {
    std::string model;
    std::vector<double> lambdas;
    std::vector<double> effective_dimension;
    RateFit capacity_fit;        ///< log N(lambda) against log(1 / lambda)
    double inverse_beta = 0.0;
    struct Trajectory {
        double alpha = 0.0;
        std::vector<std::size_t> terms;
        std::vector<double> partial_sums;
    };
    std::vector<Trajectory> embedding;
};

/// N(lambda) on a log-spaced grid, its log-log slope against 1 / beta, and
/// sum_{i <= M} lambda_i^alpha e_i(x)^2 for M = 1, 2, 4, ..., 2^max_terms_log2.
SpectralReport spectral_report(const SpectralReportOptions& options);

/// CSV with header `record,parameter,index,value`:
///   effective_dimension,<lambda>,,<N>
///   capacity_slope,,,<slope>     inverse_beta,,,<1/beta>
///   embedding,<alpha>,<M>,<partial sum>
std::string spectral_report_csv(const SpectralReport& report);

struct LowerBoundOptions {
    std::size_t m = 16;
    double s = 0.4;
    double beta = 2.0;
    double a = 0.1;
    double sigma_bar = 1.0;
    double radius = 1.0;
    std::uint64_t seed = 1;
};

/// Codebook, hard family on the min-kernel spectrum and certificate at the
/// matched sample size n = floor(m^(s beta + 1)). Throws std::invalid_argument
/// for m < 8 or a outside (0, 1/8).
LowerBoundCertificate verify_lowerbound(const LowerBoundOptions& options);

/// Human-readable summary followed by `key = value` lines.
std::string format_certificate(const LowerBoundCertificate& cert, const LowerBoundOptions& options);

} // namespace krrlab
