#pragma once

#include "krrlab/kernels.hpp"
#include "krrlab/targets.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace krrlab {

enum class LambdaRuleKind { fixed_power, cross_validation };

std::string_view lambda_rule_name(LambdaRuleKind kind) noexcept;

/**
 * Free parameters of one convergence-rate sweep.
 *
 * Text form is flat `key = value` lines; `#` starts a comment. Lists are
 * comma separated. `cv_grid = auto` and `quadrature_points = auto` select the
 * per-n defaults. Reals are written with 17 significant digits, so
 * parse_config(emit_config(c)) == c.
 */
struct ExperimentConfig {
    std::string experiment_id = "experiment";
    KernelKind kernel = KernelKind::sobolev_h1;
    std::size_t mercer_terms = 32; ///< truncated_mercer only (min-kernel spectrum)
    TargetFamily target = TargetFamily::fourier_sobolev;
    double s = 0.4;
    double beta = 2.0;
    LambdaRuleKind lambda_rule = LambdaRuleKind::fixed_power;
    std::vector<double> c_grid{0.1};
    std::size_t cv_folds = 5;
    std::vector<double> cv_grid;   ///< empty: default_cv_grid(n, s, beta, cv_points, cv_span)
    std::size_t cv_points = 20;
    double cv_span = 100.0;
    std::size_t n_start = 200;
    std::size_t n_stop = 2000;
    std::size_t n_step = 200;
    std::size_t trials = 20;
    std::size_t truncation = SeriesTarget::default_terms;
    std::size_t quadrature_points = 0; ///< 0: default_quadrature_points(n_stop)
    double noise_sigma = 1.0;
    std::uint64_t seed = 20230601;
    std::string output_dir = "results";

    bool operator==(const ExperimentConfig&) const = default;
};

/// Throws ConfigError on unknown or duplicate keys, unparsable values, or a
/// configuration that fails validate().
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string emit_config(const ExperimentConfig& config);

/// Range checks: n_start >= 2, n_step >= 1, n_stop >= n_start, trials >= 2,
/// s in (0, 2], beta > 1, sigma >= 0, odd quadrature count >= 3 (or auto),
/// and a usable lambda rule.
void validate(const ExperimentConfig& config);

std::vector<std::size_t> sample_sizes(const ExperimentConfig& config);

KernelFn make_kernel(const ExperimentConfig& config);
SeriesTarget make_target(const ExperimentConfig& config);

} // namespace krrlab
