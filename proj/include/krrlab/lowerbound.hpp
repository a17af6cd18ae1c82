#pragma once

#include "krrlab/spectral.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace krrlab {

/// Binary words omega^(0..M) in {0,1}^m (bit k-1 of a word is omega_k),
/// omega^(0) = 0, pairwise Hamming distance >= ceil(m / 8).
struct Codebook {
    std::size_t m = 0;
    std::vector<std::uint64_t> words;
    std::size_t min_distance = 0; ///< smallest pairwise distance actually achieved

    /// M, the number of words besides omega^(0).
    std::size_t alternatives() const noexcept { return words.empty() ? 0 : words.size() - 1; }
};

std::size_t hamming_distance(std::uint64_t a, std::uint64_t b) noexcept;

/// ceil(m / 8).
std::size_t required_distance(std::size_t m) noexcept;

/// Smallest M with M >= 2^(m/8) and M >= 2.
std::size_t required_alternatives(std::size_t m);

/**
 * Greedy Gilbert-Varshamov construction. Candidates are visited in a seeded
 * random order (every nonzero word when m <= 20, otherwise 2^20 random draws)
 * and kept when they are at distance >= ceil(m/8) from every kept word.
 * Stops once M = required_alternatives(m). Requires 8 <= m <= 64; throws
 * ConstructionFailure if the candidates run out first.
 */
Codebook build_codebook(std::size_t m, std::uint64_t seed);

/// Brute-force re-check of the codebook invariants, bit by bit.
bool verify_codebook(const Codebook& codebook);

/**
 * Hard function family f_i = eps^(1/2) sum_{k <= m} omega_k^(i) e_{m+k}
 * with eps = C0 m^(-s beta - 1). C0 is the largest value meeting both
 *   2^(s beta) c^(-s) C0 <= R^2            (every f_i in the [H]^s ball of radius R)
 *   C0 <= sigma_bar^2 ln(2) a / 4          (KL budget)
 * where c = min_{m < i <= 2m} lambda_i i^beta.
 */
struct HardFamily {
    Codebook codebook;
    SpectralModel model;
    double s = 0.0;
    double beta = 0.0;
    double radius = 0.0;
    double sigma_bar = 0.0;
    double a = 0.0;
    double c_model = 0.0;
    double c0 = 0.0;
    double epsilon = 0.0;
    std::vector<Coefficients> members; ///< eigen-coefficients of f_0..f_M, length 2m
};

HardFamily build_family(Codebook codebook, SpectralModel model, double s, double beta, double radius,
                        double sigma_bar, double a);

/// KL(rho_1^n, rho_2^n) = n / (2 sigma^2) ||f_1 - f_2||_{L2}^2 for Gaussian noise.
double kl_product(std::span<const double> f1, std::span<const double> f2, std::size_t n, double sigma);

/// n = floor(m^(s beta + 1)), the sample size matched to block length m.
std::size_t coupled_sample_size(std::size_t m, double s, double beta);

/// m = floor(n^(1 / (s beta + 1))), raised to 8 if smaller.
std::size_t coupled_block_length(std::size_t n, double s, double beta);

struct LowerBoundCertificate {
    std::size_t m = 0;
    std::size_t alternatives = 0; ///< M
    std::size_t n = 0;
    std::size_t min_hamming = 0;
    double epsilon = 0.0;
    double c0 = 0.0;
    double min_separation = 0.0;        ///< min_{i<j} ||f_i - f_j||^2
    double separation_threshold = 0.0;  ///< eps m / 8
    double max_kl = 0.0;                ///< max_i KL(rho_{f_i}^n, rho_{f_0}^n)
    double kl_budget = 0.0;             ///< a ln M
    double max_norm = 0.0;              ///< max_i ||f_i||_{[H]^s}
    double radius = 0.0;
    double rate_exponent = 0.0;         ///< -s beta / (s beta + 1)
    double tsybakov_probability = 0.0;  ///< sqrt(M)/(1+sqrt(M)) (1 - 2a - sqrt(2a / ln M))
    bool pass = false;
    std::string reason;                 ///< empty when pass
};

/// Numerically checks the separation and KL-budget conditions of the
/// reduction to multiple hypothesis testing. Failures are reported in the
/// certificate, never thrown.
LowerBoundCertificate certify_lower_bound(const HardFamily& family, std::size_t n, double a);

} // namespace krrlab
