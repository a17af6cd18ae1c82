#include "krrlab/report.hpp"

#include "krrlab/format.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace krrlab {

SpectralModel spectral_model_by_name(std::string_view name)
{
    if (name == "first_order_min")
        return SpectralModel::first_order_min();
    throw std::invalid_argument("unknown spectral model '" + std::string(name) +
                                "' (known: first_order_min)");
}

SpectralReport spectral_report(const SpectralReportOptions& options)
{
    if (options.points == 0)
        throw std::invalid_argument("spectral_report: empty lambda grid");
    if (!(options.lambda_min > 0.0) || !(options.lambda_max >= options.lambda_min))
        throw std::invalid_argument("spectral_report: need 0 < lambda_min <= lambda_max");
    if (options.points > 1 && !(options.lambda_max > options.lambda_min))
        throw std::invalid_argument("spectral_report: several points need lambda_min < lambda_max");

    SpectralReport report;
    const SpectralModel model = spectral_model_by_name(options.model);
    report.model = model.label();
    report.inverse_beta = 1.0 / model.decay();

    const double lo = std::log(options.lambda_min);
    const double hi = std::log(options.lambda_max);
    for (std::size_t i = 0; i < options.points; ++i) {
        const double t = options.points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(options.points - 1);
        const double lambda = std::exp(lo + (hi - lo) * t);
        report.lambdas.push_back(lambda);
        report.effective_dimension.push_back(effective_dimension(model, lambda, options.tail_tol));
    }
    if (options.points >= 2) {
        std::vector<double> inv(report.lambdas.size());
        for (std::size_t i = 0; i < inv.size(); ++i)
            inv[i] = 1.0 / report.lambdas[i];
        report.capacity_fit = fit_log_log(inv, report.effective_dimension);
    }

    for (double alpha : options.alphas) {
        SpectralReport::Trajectory traj;
        traj.alpha = alpha;
        // Running sum: the partial sum at M = 2^j extends the one at 2^(j-1).
        double sum = 0.0;
        std::size_t done = 0;
        for (std::size_t j = 0; j <= options.max_terms_log2; ++j) {
            const std::size_t target = std::size_t{1} << j;
            for (std::size_t i = done + 1; i <= target; ++i) {
                const double e = model.eigenfunction(i, options.x);
                sum += std::pow(model.eigenvalue(i), alpha) * e * e;
            }
            done = target;
            traj.terms.push_back(target);
            traj.partial_sums.push_back(sum);
        }
        report.embedding.push_back(std::move(traj));
    }
    return report;
}

std::string spectral_report_csv(const SpectralReport& report)
{
    std::ostringstream out;
    out << "record,parameter,index,value\n";
    for (std::size_t i = 0; i < report.lambdas.size(); ++i)
        out << "effective_dimension," << format_real(report.lambdas[i]) << ",,"
            << format_real(report.effective_dimension[i]) << "\n";
    if (report.lambdas.size() >= 2)
        out << "capacity_slope,,," << format_real(report.capacity_fit.slope) << "\n";
    out << "inverse_beta,,," << format_real(report.inverse_beta) << "\n";
    for (const auto& traj : report.embedding)
        for (std::size_t k = 0; k < traj.terms.size(); ++k)
            out << "embedding," << format_real(traj.alpha) << "," << traj.terms[k] << ","
                << format_real(traj.partial_sums[k]) << "\n";
    return out.str();
}

LowerBoundCertificate verify_lowerbound(const LowerBoundOptions& options)
{
    if (options.m < 8)
        throw std::invalid_argument("verify-lowerbound: m must be >= 8");
    if (!(options.a > 0.0 && options.a < 0.125))
        throw std::invalid_argument("verify-lowerbound: a must lie in (0, 1/8)");
    Codebook book = build_codebook(options.m, options.seed);
    const HardFamily family = build_family(std::move(book), SpectralModel::first_order_min(), options.s,
                                           options.beta, options.radius, options.sigma_bar, options.a);
    const std::size_t n = coupled_sample_size(options.m, options.s, options.beta);
    return certify_lower_bound(family, n, options.a);
}

std::string format_certificate(const LowerBoundCertificate& cert, const LowerBoundOptions& options)
{
    std::ostringstream out;
    out << "Lower-bound certificate (min-kernel spectrum, m = " << cert.m << ", n = " << cert.n << ")\n"
        << "  codebook: M = " << cert.alternatives << " alternatives, min Hamming distance "
        << cert.min_hamming << " (need >= " << required_distance(cert.m) << ")\n"
        << "  separation: min ||f_i - f_j||^2 = " << format_real(cert.min_separation)
        << " vs eps m / 8 = " << format_real(cert.separation_threshold) << "\n"
        << "  KL: max KL = " << format_real(cert.max_kl) << " vs a ln M = " << format_real(cert.kl_budget)
        << "\n"
        << "  norm: max ||f_i||_[H]^s = " << format_real(cert.max_norm) << " vs R = " << format_real(cert.radius)
        << "\n"
        << "  verdict: " << (cert.pass ? "PASS" : "FAIL") << (cert.reason.empty() ? "" : " (" + cert.reason + ")")
        << "\n"
        << "m = " << cert.m << "\n"
        << "n = " << cert.n << "\n"
        << "s = " << format_real(options.s) << "\n"
        << "beta = " << format_real(options.beta) << "\n"
        << "a = " << format_real(options.a) << "\n"
        << "sigma_bar = " << format_real(options.sigma_bar) << "\n"
        << "radius = " << format_real(cert.radius) << "\n"
        << "seed = " << options.seed << "\n"
        << "alternatives = " << cert.alternatives << "\n"
        << "min_hamming = " << cert.min_hamming << "\n"
        << "c0 = " << format_real(cert.c0) << "\n"
        << "epsilon = " << format_real(cert.epsilon) << "\n"
        << "min_separation = " << format_real(cert.min_separation) << "\n"
        << "separation_threshold = " << format_real(cert.separation_threshold) << "\n"
        << "max_kl = " << format_real(cert.max_kl) << "\n"
        << "kl_budget = " << format_real(cert.kl_budget) << "\n"
        << "max_norm = " << format_real(cert.max_norm) << "\n"
        << "rate_exponent = " << format_real(cert.rate_exponent) << "\n"
        << "tsybakov_probability = " << format_real(cert.tsybakov_probability) << "\n"
        << "pass = " << (cert.pass ? "true" : "false") << "\n";
    return out.str();
}

} // namespace krrlab
