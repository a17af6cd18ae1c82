#pragma once

#include <cstdint>

namespace krrlab {

/// SplitMix64 finalizer: a bijective 64-bit mixing function.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Combine a master seed with stream coordinates (e.g. sample size and
/// trial index) into an independent 64-bit stream seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) noexcept;

/// Counter-based generator: draw k returns mix64(seed + k * golden_gamma).
/// Output depends only on (seed, draw count), never on the platform's
/// standard library, so data sets reproduce everywhere.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next_u64() noexcept;

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;

    /// Standard normal via Box-Muller (cosine branch); consumes two uniforms.
    double normal() noexcept;

    /// Uniform integer in [0, bound), bound > 0, without modulo bias.
    std::uint64_t below(std::uint64_t bound) noexcept;

private:
    std::uint64_t state_;
};

} // namespace krrlab
