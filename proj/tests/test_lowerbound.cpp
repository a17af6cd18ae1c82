#include "krrlab/analysis.hpp"
#include "krrlab/lowerbound.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

using namespace krrlab;

namespace {

constexpr double kS = 0.4;
constexpr double kBeta = 2.0;
constexpr double kA = 0.1;

HardFamily min_kernel_family(std::size_t m, std::uint64_t seed = 1)
{
    return build_family(build_codebook(m, seed), SpectralModel::first_order_min(), kS, kBeta, 1.0, 1.0, kA);
}

double min_kernel_eigenvalue(std::size_t i)
{
    const double w = (2.0 * static_cast<double>(i) - 1.0) * std::numbers::pi / 2.0;
    return 1.0 / (w * w);
}

} // namespace

TEST_CASE("distance requirements")
{
    CHECK(required_distance(8) == 1);
    CHECK(required_distance(9) == 2);
    CHECK(required_distance(16) == 2);
    CHECK(required_distance(32) == 4);
    CHECK(required_alternatives(8) == 2);
    CHECK(required_alternatives(12) == 3);
    CHECK(required_alternatives(16) == 4);
    CHECK(required_alternatives(32) == 16);
    CHECK(hamming_distance(0x00, 0xFF) == 8);
    CHECK(hamming_distance(0b1010, 0b0110) == 2);
}

TEST_CASE("greedy codebooks meet the packing bound")
{
    for (std::size_t m : {8u, 12u, 16u, 24u, 32u, 48u, 64u}) {
        const Codebook book = build_codebook(m, 7);
        CAPTURE(m);
        CHECK(book.m == m);
        CHECK(book.words.front() == 0);
        CHECK(book.words.size() >= std::exp2(std::floor(m / 8.0)));
        CHECK(book.alternatives() >= std::exp2(m / 8.0));
        CHECK(book.alternatives() >= 2);
        CHECK(book.min_distance >= required_distance(m));
        CHECK(verify_codebook(book));
    }
    CHECK(build_codebook(8, 1).words.size() >= 2);
    CHECK(build_codebook(16, 1).words.size() >= 4);
}

TEST_CASE("codebook construction is seeded")
{
    CHECK(build_codebook(32, 3).words == build_codebook(32, 3).words);
    CHECK(build_codebook(32, 3).words != build_codebook(32, 4).words);
    CHECK_THROWS_AS(build_codebook(7, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_codebook(65, 1), std::invalid_argument);
}

TEST_CASE("independent codebook re-check")
{
    // An explicit pair at distance 8 >= 1 is a valid packing for m = 8.
    CHECK(hamming_distance(0x00, 0xFF) >= required_distance(8));
    CHECK(verify_codebook(Codebook{8, {0x00, 0xFF, 0x0F}, 4}));
    // Too few alternatives, a repeated word, a stray high bit, a missing zero word.
    CHECK_FALSE(verify_codebook(Codebook{8, {0x00, 0xFF}, 8}));
    CHECK_FALSE(verify_codebook(Codebook{16, {0x00, 0x0F, 0x0F, 0xF0, 0xFF00}, 0}));
    CHECK_FALSE(verify_codebook(Codebook{8, {0x00, 0x1FF, 0x0F}, 1}));
    CHECK_FALSE(verify_codebook(Codebook{8, {0x01, 0xFF, 0x0F}, 1}));
}

TEST_CASE("hard family: zero member and Parseval identity")
{
    for (std::size_t m : {8u, 16u, 32u}) {
        const HardFamily family = min_kernel_family(m);
        CAPTURE(m);
        REQUIRE(family.members.size() == family.codebook.words.size());
        for (double v : family.members[0])
            CHECK(v == 0.0);
        CHECK(interpolation_norm(family.model, family.members[0], kS) == 0.0);
        for (std::size_t i = 0; i < family.members.size(); ++i) {
            CHECK(family.members[i].size() == 2 * m);
            for (std::size_t j = i + 1; j < family.members.size(); ++j) {
                const double d = coefficient_distance(family.members[i], family.members[j]);
                const double expected = family.epsilon *
                    static_cast<double>(hamming_distance(family.codebook.words[i], family.codebook.words[j]));
                CHECK(std::abs(d * d - expected) <= 1e-15);
            }
        }
    }
}

TEST_CASE("hard family: quadrature agrees with Parseval")
{
    for (std::size_t m : {8u, 16u, 32u}) {
        const HardFamily family = min_kernel_family(m);
        for (std::size_t i = 0; i < family.members.size(); ++i) {
            for (std::size_t j = i + 1; j < family.members.size() && j < i + 4; ++j) {
                const auto& fi = family.members[i];
                const auto& fj = family.members[j];
                const double quad = l2_norm_simpson(
                    [&](double x) {
                        return evaluate_expansion(family.model, fi, x) - evaluate_expansion(family.model, fj, x);
                    },
                    4097);
                const double parseval = coefficient_distance(fi, fj);
                CHECK(std::abs(quad * quad - parseval * parseval) <= 1e-6);
            }
        }
    }
}

TEST_CASE("hard family: members stay in the radius-R ball")
{
    for (std::size_t m : {8u, 16u, 32u}) {
        const HardFamily family = min_kernel_family(m);
        CAPTURE(m);
        double c = INFINITY;
        for (std::size_t i = m + 1; i <= 2 * m; ++i)
            c = std::min(c, min_kernel_eigenvalue(i) * std::pow(static_cast<double>(i), kBeta));
        CHECK(family.c_model == doctest::Approx(c).epsilon(1e-13));
        const double chain = std::pow(2.0, kS * kBeta) * std::pow(c, -kS) * family.c0;
        CHECK(chain <= family.radius * family.radius * (1.0 + 1e-12));
        for (std::size_t i = 1; i < family.members.size(); ++i) {
            double norm_sq = 0.0;
            for (std::size_t k = 1; k <= m; ++k)
                if ((family.codebook.words[i] >> (k - 1)) & 1U)
                    norm_sq += family.epsilon * std::pow(min_kernel_eigenvalue(m + k), -kS);
            CHECK(interpolation_norm(family.model, family.members[i], kS) ==
                  doctest::Approx(std::sqrt(norm_sq)).epsilon(1e-13));
            CHECK(norm_sq <= chain * (1.0 + 1e-12));
            CHECK(norm_sq <= 1.0);
        }
    }
}

TEST_CASE("hard family: scaling and sup-norm sanity bound")
{
    const HardFamily f16 = min_kernel_family(16);
    const HardFamily f32 = min_kernel_family(32);
    // The KL constraint binds for both, so C0 is shared.
    CHECK(f16.c0 == f32.c0);
    CHECK(f16.c0 == doctest::Approx(std::numbers::ln2 * kA / 4.0).epsilon(1e-15));
    CHECK(f32.epsilon / f16.epsilon == doctest::Approx(std::pow(2.0, -kS * kBeta - 1.0)).epsilon(1e-14));

    for (const HardFamily* f : {&f16, &f32}) {
        const double bound = std::sqrt(f->epsilon) * static_cast<double>(f->codebook.m) * std::numbers::sqrt2;
        for (const auto& member : f->members)
            for (int i = 0; i <= 2000; ++i)
                REQUIRE(std::abs(evaluate_expansion(f->model, member, i / 2000.0)) <= bound);
    }
}

TEST_CASE("KL divergence of Gaussian product measures")
{
    const std::vector<double> f{0.3, -0.2, 0.1};
    CHECK(kl_product(f, f, 100, 1.0) == 0.0);
    const std::vector<double> unit{1.0}, none{0.0};
    CHECK(kl_product(unit, none, 10, 1.0) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(kl_product(unit, none, 10, 2.0) == doctest::Approx(1.25).epsilon(1e-15));
    CHECK_THROWS_AS(kl_product(unit, none, 10, 0.0), std::invalid_argument);
}

TEST_CASE("coupled sample size and block length")
{
    CHECK(coupled_sample_size(16, kS, kBeta) == static_cast<std::size_t>(std::floor(std::pow(16.0, 1.8))));
    CHECK(coupled_sample_size(8, kS, kBeta) == 42);
    CHECK(coupled_block_length(1000, kS, kBeta) == 46);
    CHECK(coupled_block_length(10, kS, kBeta) == 8);
}

TEST_CASE("certificates for the min-kernel spectrum")
{
    for (std::size_t m : {8u, 16u, 32u}) {
        const HardFamily family = min_kernel_family(m);
        const std::size_t n = coupled_sample_size(m, kS, kBeta);
        const LowerBoundCertificate cert = certify_lower_bound(family, n, kA);
        CAPTURE(m);
        CHECK(cert.pass);
        CHECK(cert.reason.empty());
        CHECK(cert.alternatives == family.codebook.alternatives());
        CHECK(cert.min_hamming == family.codebook.min_distance);
        CHECK(cert.min_separation == doctest::Approx(family.epsilon * cert.min_hamming).epsilon(1e-15));
        CHECK(cert.separation_threshold == doctest::Approx(family.epsilon * m / 8.0).epsilon(1e-15));
        CHECK(cert.max_kl <= kA * std::log(static_cast<double>(cert.alternatives)));
        CHECK(cert.max_norm <= 1.0);
        CHECK(cert.rate_exponent == doctest::Approx(-0.8 / 1.8).epsilon(1e-15));
        double max_kl = 0.0;
        for (std::size_t i = 1; i < family.members.size(); ++i)
            max_kl = std::max(max_kl, kl_product(family.members[i], family.members[0], n, 1.0));
        CHECK(cert.max_kl == max_kl);
        const double root = std::sqrt(static_cast<double>(cert.alternatives));
        const double expected_p = root / (1.0 + root) *
            (1.0 - 2.0 * kA - std::sqrt(2.0 * kA / std::log(static_cast<double>(cert.alternatives))));
        CHECK(cert.tsybakov_probability == doctest::Approx(expected_p).epsilon(1e-14));
    }
}

TEST_CASE("certificates reject degenerate or overloaded families")
{
    const HardFamily single =
        build_family(Codebook{8, {0x00, 0xFF}, 8}, SpectralModel::first_order_min(), kS, kBeta, 1.0, 1.0, kA);
    const LowerBoundCertificate lone = certify_lower_bound(single, 42, kA);
    CHECK_FALSE(lone.pass);
    CHECK(lone.reason.find("M >= 2") != std::string::npos);

    // Far more samples than the coupling allows: the KL budget is blown.
    const HardFamily family = min_kernel_family(16);
    const LowerBoundCertificate greedy = certify_lower_bound(family, 100000, kA);
    CHECK_FALSE(greedy.pass);
    CHECK(greedy.max_kl > greedy.kl_budget);
}

TEST_CASE("family parameter checks")
{
    const Codebook book = build_codebook(16, 1);
    const SpectralModel model = SpectralModel::first_order_min();
    CHECK_THROWS_AS(build_family(book, model, kS, kBeta, 1.0, 1.0, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(build_family(book, model, kS, kBeta, 1.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_family(book, model, kS, kBeta, 1.0, 1.0, 0.125), std::invalid_argument);
    CHECK_THROWS_AS(build_family(book, model, kS, kBeta, 0.0, 1.0, 0.1), std::invalid_argument);
}
