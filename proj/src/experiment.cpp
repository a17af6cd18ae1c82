#include "krrlab/experiment.hpp"

#include "krrlab/errors.hpp"
#include "krrlab/format.hpp"
#include "krrlab/rng.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace krrlab {

namespace {

std::string arm_file_label(const SweepArm& arm)
{
    std::string out;
    for (char ch : arm.label)
        if (ch != '=')
            out += ch;
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
    if (!out)
        throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string trial_row(const ExperimentConfig& cfg, const SweepArm& arm, const TrialRecord& r)
{
    std::string row;
    row += cfg.experiment_id + "/" + arm.label;
    row += ",";
    row += kernel_kind_name(cfg.kernel);
    row += ",";
    row += target_family_name(cfg.target);
    row += "," + format_real(cfg.s);
    row += "," + std::to_string(r.n);
    row += "," + std::to_string(r.trial);
    row += "," + format_real(r.lambda);
    row += "," + format_real(r.error_l2);
    row += "\n";
    return row;
}

} // namespace

std::uint64_t trial_seed(std::uint64_t master, std::size_t n, std::size_t trial) noexcept
{
    return derive_seed(master, n, trial);
}

std::string trials_csv_header()
{
    return "experiment_id,kernel,target,s,n,trial,lambda,error_l2\n";
}

std::string summary_csv(const SweepSummary& summary)
{
    std::string out = "n,mean_error,std_error,mean_sq_error,trials\n";
    for (const auto& row : summary.rows) {
        out += std::to_string(row.n) + "," + format_real(row.mean_error) + "," +
               format_real(row.std_error) + "," + format_real(row.mean_sq_error) + "," +
               std::to_string(row.trials) + "\n";
    }
    return out;
}

std::string rate_report(const ExperimentConfig& config, const ExperimentResult& result)
{
    std::ostringstream out;
    const SweepArm& best = result.best();
    out << "# convergence rate report\n"
        << "experiment_id = " << config.experiment_id << "\n"
        << "selected_arm = " << best.label << "\n"
        << "r_squared = " << format_real(best.rate_squared.slope) << "\n"
        << "b_squared = " << format_real(best.rate_squared.intercept) << "\n"
        << "rms_residual_squared = " << format_real(best.rate_squared.rms_residual) << "\n"
        << "r_rms = " << format_real(best.rate_rms.slope) << "\n"
        << "b_rms = " << format_real(best.rate_rms.intercept) << "\n"
        << "rms_residual_rms = " << format_real(best.rate_rms.rms_residual) << "\n"
        << "theoretical_exponent = " << format_real(result.theoretical_exponent) << "\n"
        << "quadrature_points = " << result.quadrature_points << "\n";
    if (result.arms.size() > 1) {
        out << "# per-arm fits (mean error at largest n, r_squared, r_rms)\n";
        for (const auto& arm : result.arms) {
            out << "arm." << arm.label << " = " << format_real(arm.summary.rows.back().mean_error) << ","
                << format_real(arm.rate_squared.slope) << "," << format_real(arm.rate_rms.slope) << "\n";
        }
    }
    out << "# configuration\n" << emit_config(config);
    return out.str();
}

ExperimentResult run_experiment(const ExperimentConfig& config, std::ostream* log)
{
    return run_experiment(config, config.output_dir, log);
}

ExperimentResult run_experiment(const ExperimentConfig& config, const std::filesystem::path& output_dir,
                                std::ostream* log)
{
    validate(config);
    const KernelFn kernel = make_kernel(config);
    const SeriesTarget target = make_target(config);
    const std::vector<std::size_t> ns = sample_sizes(config);
    const bool cv = config.lambda_rule == LambdaRuleKind::cross_validation;

    ExperimentResult result;
    const double sb = config.s * config.beta;
    result.theoretical_exponent = -sb / (sb + 1.0);
    result.quadrature_points =
        config.quadrature_points != 0 ? config.quadrature_points : default_quadrature_points(ns.back());

    if (cv) {
        result.arms.push_back(SweepArm{"cv", 0.0, {}, {}, {}, {}});
    } else {
        for (double c : config.c_grid)
            result.arms.push_back(SweepArm{"c=" + format_real(c), c, {}, {}, {}, {}});
    }

    const bool write = !output_dir.empty();
    std::ofstream trials_out;
    if (write) {
        std::filesystem::create_directories(output_dir);
        trials_out.open(output_dir / "trials.csv", std::ios::binary | std::ios::trunc);
        if (!trials_out)
            throw std::runtime_error("cannot write '" + (output_dir / "trials.csv").string() + "'");
        trials_out << trials_csv_header();
    }

    const ErrorMeter meter(target, result.quadrature_points);

    for (std::size_t n : ns) {
        std::string rows;
        for (std::size_t t = 0; t < config.trials; ++t) {
            try {
                const DataSet data = generate_data(target, n, config.noise_sigma, trial_seed(config.seed, n, t));
                const Eigen::MatrixXd gram = gram_matrix(kernel, data.x);
                const Eigen::Map<const Eigen::VectorXd> y(data.y.data(), static_cast<Eigen::Index>(n));

                std::vector<double> lambdas(result.arms.size());
                Eigen::MatrixXd alphas(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(result.arms.size()));
                for (std::size_t a = 0; a < result.arms.size(); ++a) {
                    if (cv) {
                        const std::vector<double> grid =
                            config.cv_grid.empty()
                                ? default_cv_grid(n, config.s, config.beta, config.cv_points, config.cv_span)
                                : config.cv_grid;
                        lambdas[a] = cross_validate(data, gram, grid, config.cv_folds).lambda;
                    } else {
                        lambdas[a] = fixed_power_lambda(FixedPower{result.arms[a].c, config.s, config.beta}, n);
                    }
                    alphas.col(static_cast<Eigen::Index>(a)) =
                        solve_regularized(gram, y, static_cast<double>(n) * lambdas[a]);
                }

                const std::vector<double> errors = meter.l2_errors(kernel, data.x, alphas);
                for (std::size_t a = 0; a < result.arms.size(); ++a) {
                    const TrialRecord record{n, t, lambdas[a], errors[a]};
                    result.arms[a].records.push_back(record);
                    rows += trial_row(config, result.arms[a], record);
                }
            } catch (const std::exception& e) {
                if (write) {
                    trials_out << rows;
                    trials_out.flush();
                }
                throw ExperimentError(std::string("n = ") + std::to_string(n) + ", trial = " +
                                          std::to_string(t) + ": " + e.what(),
                                      static_cast<long>(n), static_cast<long>(t));
            }
        }
        if (write) {
            trials_out << rows;
            trials_out.flush();
        }
        if (log) {
            *log << "[" << config.experiment_id << "] n = " << n;
            for (const auto& arm : result.arms)
                *log << "  " << arm.label << ": " << format_real(arm.records.back().error_l2);
            *log << "\n";
            log->flush();
        }
    }

    for (auto& arm : result.arms) {
        arm.summary = summarize(arm.records);
        if (arm.summary.rows.size() >= 2) {
            arm.rate_squared = fit_rate(arm.summary, ErrorScale::squared);
            arm.rate_rms = fit_rate(arm.summary, ErrorScale::rms);
        }
    }
    for (std::size_t a = 1; a < result.arms.size(); ++a)
        if (result.arms[a].summary.rows.back().mean_error < result.arms[result.selected].summary.rows.back().mean_error)
            result.selected = a;

    if (write) {
        write_file(output_dir / "summary.csv", summary_csv(result.best().summary));
        if (result.arms.size() > 1)
            for (const auto& arm : result.arms)
                write_file(output_dir / ("summary_" + arm_file_label(arm) + ".csv"), summary_csv(arm.summary));
        write_file(output_dir / "rate_report.txt", rate_report(config, result));
    }
    return result;
}

} // namespace krrlab
