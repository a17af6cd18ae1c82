// krrlab: command-line entry point.
//
//   krrlab run-experiment --config <path>
//   krrlab verify-lowerbound --m 16 --s 0.4 --beta 2 --a 0.1 --seed 1
//   krrlab spectral-report --model first_order_min --lambda-min 1e-6 --lambda-max 1e-2 \
//                          --points 9 --alphas 0.4,0.6,1
//
// Exit codes: 0 success, 2 configuration / argument error, 3 numerical
// failure, 4 certificate failure.

#include "krrlab/config.hpp"
#include "krrlab/errors.hpp"
#include "krrlab/experiment.hpp"
#include "krrlab/format.hpp"
#include "krrlab/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitCertificate = 4;

int run_experiment_cmd(const std::string& config_path, const std::string& output_override,
                       const std::vector<double>& c_grid, bool quiet)
{
    krrlab::ExperimentConfig config = krrlab::load_config(config_path);
    if (!output_override.empty())
        config.output_dir = output_override;
    if (!c_grid.empty()) {
        config.c_grid = c_grid;
        krrlab::validate(config);
    }
    const krrlab::ExperimentResult result = krrlab::run_experiment(config, quiet ? nullptr : &std::cerr);
    const auto& best = result.best();
    std::cout << "selected " << best.label << ": r (squared error) = "
              << krrlab::format_real(best.rate_squared.slope)
              << ", r (RMS error) = " << krrlab::format_real(best.rate_rms.slope)
              << ", theoretical = " << krrlab::format_real(result.theoretical_exponent) << "\n"
              << "outputs written to " << config.output_dir << "\n";
    return 0;
}

int verify_lowerbound_cmd(const krrlab::LowerBoundOptions& options)
{
    const krrlab::LowerBoundCertificate cert = krrlab::verify_lowerbound(options);
    std::cout << krrlab::format_certificate(cert, options);
    return cert.pass ? 0 : kExitCertificate;
}

int spectral_report_cmd(const krrlab::SpectralReportOptions& options, const std::string& out_path)
{
    const std::string csv = krrlab::spectral_report_csv(krrlab::spectral_report(options));
    if (out_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw krrlab::ConfigError("cannot write '" + out_path + "'");
        out << csv;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Kernel ridge regression convergence-rate laboratory"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run-experiment", "Run a seeded convergence-rate sweep from a config file");
    std::string config_path;
    std::string output_override;
    std::vector<double> c_grid;
    bool quiet = false;
    run->add_option("--config", config_path, "key = value configuration file")->required();
    run->add_option("--output-dir", output_override, "Override output_dir from the config");
    run->add_option("--c-grid", c_grid, "Override c_grid (fixed_power constants)")->delimiter(',');
    run->add_flag("--quiet", quiet, "Suppress per-n progress on stderr");

    auto* lower = app.add_subcommand("verify-lowerbound", "Build and certify the minimax lower-bound family");
    krrlab::LowerBoundOptions lb;
    long long m_arg = static_cast<long long>(lb.m);
    lower->add_option("--m", m_arg, "Block length (>= 8)")->required();
    lower->add_option("--s", lb.s, "Source condition s")->required();
    lower->add_option("--beta", lb.beta, "Eigenvalue decay exponent")->required();
    lower->add_option("--a", lb.a, "KL budget constant in (0, 1/8)")->required();
    lower->add_option("--seed", lb.seed, "Codebook search seed")->required();
    lower->add_option("--sigma-bar", lb.sigma_bar, "Noise standard deviation")->capture_default_str();
    lower->add_option("--radius", lb.radius, "Radius R of the [H]^s ball")->capture_default_str();

    auto* spectral = app.add_subcommand("spectral-report", "Effective dimension and embedding partial sums");
    krrlab::SpectralReportOptions sr;
    long long points_arg = static_cast<long long>(sr.points);
    std::string spectral_out;
    spectral->add_option("--model", sr.model, "Spectral model name")->required();
    spectral->add_option("--lambda-min", sr.lambda_min)->capture_default_str();
    spectral->add_option("--lambda-max", sr.lambda_max)->capture_default_str();
    spectral->add_option("--points", points_arg, "Number of log-spaced lambdas")->capture_default_str();
    spectral->add_option("--alphas", sr.alphas, "Embedding exponents")->delimiter(',');
    spectral->add_option("--x", sr.x, "Evaluation point for embedding sums")->capture_default_str();
    spectral->add_option("--max-terms-log2", sr.max_terms_log2)->capture_default_str();
    spectral->add_option("--out", spectral_out, "Write CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*run)
            return run_experiment_cmd(config_path, output_override, c_grid, quiet);
        if (*lower) {
            if (m_arg < 0)
                throw std::invalid_argument("m must be non-negative");
            lb.m = static_cast<std::size_t>(m_arg);
            return verify_lowerbound_cmd(lb);
        }
        if (*spectral) {
            if (points_arg < 0)
                throw std::invalid_argument("points must be non-negative");
            sr.points = static_cast<std::size_t>(points_arg);
            return spectral_report_cmd(sr, spectral_out);
        }
    } catch (const krrlab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitConfig;
    } catch (const krrlab::ExperimentError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitConfig;
}
