#include "krrlab/spectral.hpp"
#include "krrlab/targets.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

using namespace krrlab;

namespace {

double max_on_witness_grid(const SeriesTarget& t)
{
    double best = 0.0;
    for (int j = 1; j <= 20; ++j)
        best = std::max(best, std::abs(t(1.0 - std::ldexp(1.0, -j))));
    return best;
}

} // namespace

TEST_CASE("family identifiers round-trip")
{
    CHECK(parse_target_family("fourier_sobolev") == TargetFamily::fourier_sobolev);
    CHECK(parse_target_family("min_eigen") == TargetFamily::min_eigen);
    CHECK(target_family_name(TargetFamily::min_eigen) == "min_eigen");
    CHECK_THROWS_AS(parse_target_family("gaussian_bump"), std::invalid_argument);
}

TEST_CASE("series coefficients")
{
    const SeriesTarget t(TargetFamily::fourier_sobolev, 0.4, 1000);
    CHECK(t.terms() == 1000);
    CHECK(t.coefficients()[0] == 1.0);
    CHECK(t.coefficients()[1] == doctest::Approx(std::pow(2.0, -0.9)).epsilon(1e-15));
    CHECK(t.coefficients()[999] == doctest::Approx(std::pow(1000.0, -0.9)).epsilon(1e-15));
    CHECK_THROWS_AS(SeriesTarget(TargetFamily::min_eigen, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(SeriesTarget(TargetFamily::min_eigen, 0.4, 0), std::invalid_argument);
}

TEST_CASE("fourier target at x = 1/2 is an alternating sum")
{
    const SeriesTarget t(TargetFamily::fourier_sobolev, 0.4, 1000);
    double brute = 0.0;
    for (int k = 1; k <= 1000; ++k)
        brute += (k % 2 == 0 ? 1.0 : -1.0) * std::pow(static_cast<double>(k), -0.9);
    CHECK(std::abs(eval_target(t, 0.5) - brute) <= 1e-12);
}

TEST_CASE("fourier target at x = 1 grows without bound in K")
{
    double previous = 0.0;
    for (std::size_t terms : {10u, 100u, 1000u, 10000u}) {
        const SeriesTarget t(TargetFamily::fourier_sobolev, 0.4, terms);
        double harmonic = 0.0;
        for (std::size_t k = 1; k <= terms; ++k)
            harmonic += std::pow(static_cast<double>(k), -0.9);
        const double value = t(1.0);
        CHECK(value == doctest::Approx(harmonic).epsilon(1e-10));
        CHECK(value > previous);
        previous = value;
    }
}

TEST_CASE("min_eigen target vanishes at the origin")
{
    for (std::size_t terms : {1u, 7u, 1000u})
        CHECK(eval_target(SeriesTarget(TargetFamily::min_eigen, 0.4, terms), 0.0) == 0.0);
}

TEST_CASE("eigen-coefficients of the targets")
{
    const auto two = target_coefficients(SeriesTarget(TargetFamily::min_eigen, 0.4, 2));
    REQUIRE(two.has_value());
    REQUIRE(two->size() == 3);
    CHECK((*two)[0] == 1.0);
    CHECK((*two)[1] == 0.0);
    CHECK((*two)[2] == doctest::Approx(0.535887).epsilon(1e-6));

    const SeriesTarget full(TargetFamily::min_eigen, 0.4, 1000);
    const auto a = target_coefficients(full);
    REQUIRE(a.has_value());
    for (std::size_t i = 1; i < a->size(); i += 2)
        REQUIRE((*a)[i] == 0.0);
    const double norm = interpolation_norm(SpectralModel::first_order_min(), *a, 0.4);
    CHECK(std::isfinite(norm));
    CHECK(norm > 0.0);

    CHECK_FALSE(target_coefficients(SeriesTarget(TargetFamily::fourier_sobolev, 0.4)).has_value());
}

TEST_CASE("min_eigen target matches the eigenfunction expansion")
{
    const SeriesTarget t(TargetFamily::min_eigen, 0.4, 1000);
    const auto a = target_coefficients(t);
    const SpectralModel model = SpectralModel::first_order_min();
    for (double x : {0.0, 0.013, 0.25, 0.5, 0.77, 0.999, 1.0})
        CHECK(std::abs(t(x) - evaluate_expansion(model, *a, x)) <= 1e-12);
}

TEST_CASE("evaluation is linear in the coefficients")
{
    std::vector<double> c1(300), c2(300), both(300);
    for (std::size_t k = 0; k < c1.size(); ++k) {
        c1[k] = std::pow(static_cast<double>(k + 1), -0.9);
        c2[k] = std::cos(static_cast<double>(k)) / static_cast<double>(k + 1);
        both[k] = c1[k] + c2[k];
    }
    for (auto family : {TargetFamily::fourier_sobolev, TargetFamily::min_eigen}) {
        const auto t1 = SeriesTarget::with_coefficients(family, 0.4, c1);
        const auto t2 = SeriesTarget::with_coefficients(family, 0.4, c2);
        const auto t12 = SeriesTarget::with_coefficients(family, 0.4, both);
        for (double x : {0.1, 0.33, 0.5, 0.9})
            CHECK(std::abs(t12(x) - (t1(x) + t2(x))) <= 1e-12);
    }
}

TEST_CASE("partial sums are Cauchy away from the endpoints")
{
    for (auto family : {TargetFamily::fourier_sobolev, TargetFamily::min_eigen}) {
        double previous = INFINITY;
        for (std::size_t k : {250u, 500u, 1000u}) {
            const SeriesTarget coarse(family, 0.4, k);
            const SeriesTarget fine(family, 0.4, 2 * k);
            double worst = 0.0;
            for (int i = 0; i <= 90; ++i) {
                const double x = 0.05 + 0.01 * i;
                worst = std::max(worst, std::abs(fine(x) - coarse(x)));
            }
            CHECK(worst < previous);
            previous = worst;
        }
    }
}

TEST_CASE("truncated targets are unbounded near x = 1")
{
    for (auto family : {TargetFamily::fourier_sobolev, TargetFamily::min_eigen}) {
        const SeriesTarget t(family, 0.4, 1'000'000);
        CHECK(max_on_witness_grid(t) > 10.0 * std::abs(t(0.5)));
    }
}

TEST_CASE("noise-free data lies on the target")
{
    const SeriesTarget t(TargetFamily::fourier_sobolev, 0.4, 200);
    const DataSet data = generate_data(t, 50, 0.0, 17);
    REQUIRE(data.size() == 50);
    CHECK(data.seed == 17);
    for (std::size_t i = 0; i < data.size(); ++i) {
        CHECK(data.x[i] >= 0.0);
        CHECK(data.x[i] < 1.0);
        CHECK(data.y[i] == t(data.x[i]));
    }
}

TEST_CASE("data generation is deterministic in the seed")
{
    const SeriesTarget t(TargetFamily::min_eigen, 0.4, 100);
    const DataSet a = generate_data(t, 100, 1.0, 42);
    const DataSet b = generate_data(t, 100, 1.0, 42);
    const DataSet c = generate_data(t, 100, 1.0, 43);
    CHECK(a.x == b.x);
    CHECK(a.y == b.y);
    CHECK(a.x != c.x);
    // x is left in draw order, not sorted.
    CHECK_FALSE(std::is_sorted(a.x.begin(), a.x.end()));
}

TEST_CASE("noise has zero mean and unit variance")
{
    const SeriesTarget t(TargetFamily::min_eigen, 0.4, 50);
    const std::size_t n = 100000;
    const DataSet data = generate_data(t, n, 1.0, 2024);
    double sum = 0.0, sum_sq = 0.0, x_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = data.y[i] - t(data.x[i]);
        sum += e;
        sum_sq += e * e;
        x_sum += data.x[i];
    }
    const double mean = sum / n;
    const double var = (sum_sq - n * mean * mean) / (n - 1);
    CHECK(std::abs(mean) <= 0.02);
    CHECK(std::abs(var - 1.0) <= 0.05);
    CHECK(std::abs(x_sum / n - 0.5) <= 0.01);
}

TEST_CASE("data generation rejects bad arguments")
{
    const SeriesTarget t(TargetFamily::min_eigen, 0.4, 10);
    CHECK_THROWS_AS(generate_data(t, 0, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_data(t, 10, -0.5, 1), std::invalid_argument);
}
