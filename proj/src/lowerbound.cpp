#include "krrlab/lowerbound.hpp"

#include "krrlab/errors.hpp"
#include "krrlab/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace krrlab {

namespace {

constexpr std::size_t kMaxBlockLength = 64;
constexpr std::size_t kCandidateLog2 = 20;

std::uint64_t word_mask(std::size_t m) noexcept
{
    return m >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
}

bool far_from_all(std::uint64_t w, const std::vector<std::uint64_t>& kept, std::size_t dmin) noexcept
{
    for (std::uint64_t k : kept)
        if (hamming_distance(w, k) < dmin)
            return false;
    return true;
}

} // namespace

std::size_t hamming_distance(std::uint64_t a, std::uint64_t b) noexcept
{
    return static_cast<std::size_t>(std::popcount(a ^ b));
}

std::size_t required_distance(std::size_t m) noexcept
{
    return (m + 7) / 8;
}

std::size_t required_alternatives(std::size_t m)
{
    const double bound = std::exp2(static_cast<double>(m) / 8.0);
    return std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(bound)));
}

Codebook build_codebook(std::size_t m, std::uint64_t seed)
{
    if (m < 8 || m > kMaxBlockLength)
        throw std::invalid_argument("build_codebook: block length must be in [8, 64], got " +
                                    std::to_string(m));
    const std::size_t dmin = required_distance(m);
    const std::size_t wanted = required_alternatives(m) + 1;

    Codebook book;
    book.m = m;
    book.words.push_back(0);

    CounterRng rng(derive_seed(seed, m, 0x636f6465626f6f6bULL));
    const auto try_add = [&](std::uint64_t w) {
        if (w != 0 && far_from_all(w, book.words, dmin))
            book.words.push_back(w);
        return book.words.size() >= wanted;
    };

    bool done = false;
    if (m <= kCandidateLog2) {
        std::vector<std::uint64_t> candidates((std::size_t{1} << m) - 1);
        for (std::size_t i = 0; i < candidates.size(); ++i)
            candidates[i] = i + 1;
        for (std::size_t i = candidates.size(); i > 1; --i)
            std::swap(candidates[i - 1], candidates[rng.below(i)]);
        for (std::uint64_t w : candidates)
            if ((done = try_add(w)))
                break;
    } else {
        const std::uint64_t mask = word_mask(m);
        for (std::size_t draw = 0; draw < (std::size_t{1} << kCandidateLog2); ++draw)
            if ((done = try_add(rng.next_u64() & mask)))
                break;
    }
    if (!done)
        throw ConstructionFailure("build_codebook: found only " + std::to_string(book.words.size()) +
                                  " words for m = " + std::to_string(m));

    book.min_distance = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < book.words.size(); ++i)
        for (std::size_t j = i + 1; j < book.words.size(); ++j)
            book.min_distance = std::min(book.min_distance, hamming_distance(book.words[i], book.words[j]));
    return book;
}

bool verify_codebook(const Codebook& codebook)
{
    const std::size_t m = codebook.m;
    if (m < 8 || m > kMaxBlockLength || codebook.words.empty() || codebook.words.front() != 0)
        return false;
    const std::size_t dmin = required_distance(m);
    for (std::uint64_t w : codebook.words)
        if ((w & ~word_mask(m)) != 0)
            return false;
    for (std::size_t i = 0; i < codebook.words.size(); ++i) {
        for (std::size_t j = i + 1; j < codebook.words.size(); ++j) {
            std::size_t d = 0;
            for (std::size_t k = 0; k < m; ++k)
                d += ((codebook.words[i] >> k) & 1U) != ((codebook.words[j] >> k) & 1U);
            if (d < dmin)
                return false;
        }
    }
    return codebook.alternatives() >= required_alternatives(m);
}

HardFamily build_family(Codebook codebook, SpectralModel model, double s, double beta, double radius,
                        double sigma_bar, double a)
{
    if (!(a > 0.0 && a < 0.125))
        throw std::invalid_argument("build_family: a must lie in (0, 1/8)");
    if (!(s > 0.0) || !(beta > 1.0) || !(radius > 0.0) || !(sigma_bar > 0.0))
        throw std::invalid_argument("build_family: need s > 0, beta > 1, R > 0, sigma_bar > 0");
    const std::size_t m = codebook.m;
    if (m == 0 || codebook.words.empty())
        throw std::invalid_argument("build_family: empty codebook");

    double c_model = std::numeric_limits<double>::infinity();
    for (std::size_t i = m + 1; i <= 2 * m; ++i)
        c_model = std::min(c_model, model.eigenvalue(i) * std::pow(static_cast<double>(i), beta));

    const double sb = s * beta;
    const double c0_norm = radius * radius * std::pow(2.0, -sb) * std::pow(c_model, s);
    const double c0_kl = sigma_bar * sigma_bar * std::numbers::ln2 * a / 4.0;
    const double c0 = std::min(c0_norm, c0_kl);
    const double epsilon = c0 * std::pow(static_cast<double>(m), -sb - 1.0);
    const double amplitude = std::sqrt(epsilon);

    std::vector<Coefficients> members;
    members.reserve(codebook.words.size());
    for (std::uint64_t w : codebook.words) {
        Coefficients f(2 * m, 0.0);
        for (std::size_t k = 1; k <= m; ++k)
            if ((w >> (k - 1)) & 1U)
                f[m + k - 1] = amplitude;
        members.push_back(std::move(f));
    }

    return HardFamily{std::move(codebook), std::move(model), s, beta, radius, sigma_bar, a,
                      c_model, c0, epsilon, std::move(members)};
}

double kl_product(std::span<const double> f1, std::span<const double> f2, std::size_t n, double sigma)
{
    if (!(sigma > 0.0))
        throw std::invalid_argument("kl_product: sigma must be positive");
    const double d = coefficient_distance(f1, f2);
    return static_cast<double>(n) / (2.0 * sigma * sigma) * d * d;
}

std::size_t coupled_sample_size(std::size_t m, double s, double beta)
{
    return static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(m), s * beta + 1.0)));
}

std::size_t coupled_block_length(std::size_t n, double s, double beta)
{
    const double m = std::floor(std::pow(static_cast<double>(n), 1.0 / (s * beta + 1.0)));
    return std::max<std::size_t>(8, static_cast<std::size_t>(m));
}

LowerBoundCertificate certify_lower_bound(const HardFamily& family, std::size_t n, double a)
{
    LowerBoundCertificate cert;
    const auto& members = family.members;
    cert.m = family.codebook.m;
    cert.alternatives = family.codebook.alternatives();
    cert.n = n;
    cert.epsilon = family.epsilon;
    cert.c0 = family.c0;
    cert.radius = family.radius;
    const double sb = family.s * family.beta;
    cert.rate_exponent = -sb / (sb + 1.0);

    if (cert.alternatives < 2) {
        cert.reason = "need M >= 2 alternatives, have " + std::to_string(cert.alternatives);
        return cert;
    }

    cert.min_hamming = std::numeric_limits<std::size_t>::max();
    cert.min_separation = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            const double d = coefficient_distance(members[i], members[j]);
            cert.min_separation = std::min(cert.min_separation, d * d);
            cert.min_hamming = std::min(cert.min_hamming,
                                        hamming_distance(family.codebook.words[i], family.codebook.words[j]));
        }
    }
    cert.separation_threshold = family.epsilon * static_cast<double>(cert.m) / 8.0;

    for (std::size_t i = 1; i < members.size(); ++i) {
        cert.max_kl = std::max(cert.max_kl, kl_product(members[i], members[0], n, family.sigma_bar));
        cert.max_norm = std::max(cert.max_norm, interpolation_norm(family.model, members[i], family.s));
    }
    const double log_m = std::log(static_cast<double>(cert.alternatives));
    cert.kl_budget = a * log_m;
    const double root = std::sqrt(static_cast<double>(cert.alternatives));
    cert.tsybakov_probability = root / (1.0 + root) * (1.0 - 2.0 * a - std::sqrt(2.0 * a / log_m));

    const bool separated = cert.min_separation >= cert.separation_threshold;
    const bool within_budget = cert.max_kl <= cert.kl_budget;
    const bool in_ball = cert.max_norm <= cert.radius;
    cert.pass = separated && within_budget && in_ball;
    if (!separated)
        cert.reason = "separation below eps m / 8";
    else if (!within_budget)
        cert.reason = "KL divergence exceeds a ln M";
    else if (!in_ball)
        cert.reason = "member outside the [H]^s ball of radius R";
    return cert;
}

} // namespace krrlab
