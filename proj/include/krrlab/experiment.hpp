#pragma once

#include "krrlab/analysis.hpp"
#include "krrlab/config.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace krrlab {

/// One regularization choice within a sweep: a fixed-power constant c, or CV.
struct SweepArm {
    std::string label;        ///< "c=<c>" or "cv"
    double c = 0.0;           ///< 0 for the CV arm
    std::vector<TrialRecord> records;
    SweepSummary summary;
    RateFit rate_squared;     ///< fitted to mean_sq_error
    RateFit rate_rms;         ///< fitted to mean_error
};

struct ExperimentResult {
    std::vector<SweepArm> arms;
    std::size_t selected = 0; ///< arm with the lowest mean error at the largest n
    std::size_t quadrature_points = 0;
    double theoretical_exponent = 0.0; ///< -s beta / (s beta + 1)

    const SweepArm& best() const { return arms.at(selected); }
};

/// Trial seed for (n, trial): derive_seed(master, n, trial).
std::uint64_t trial_seed(std::uint64_t master, std::size_t n, std::size_t trial) noexcept;

/**
 * Full sweep. For every n and trial: draw data from the trial seed, build the
 * Gram matrix once, fit every arm, measure the Simpson L2 error. Then
 * summarize and fit rates per arm.
 *
 * When `output_dir` is non-empty, writes trials.csv (streamed per n, so a
 * failure leaves the completed rows on disk), summary.csv for the selected
 * arm, summary_<arm>.csv per arm when there are several, and
 * rate_report.txt. Numerical failures are rethrown as ExperimentError
 * carrying (n, trial). Progress goes to `log` when given.
 */
ExperimentResult run_experiment(const ExperimentConfig& config, const std::filesystem::path& output_dir,
                                std::ostream* log = nullptr);

/// Same, writing to config.output_dir.
ExperimentResult run_experiment(const ExperimentConfig& config, std::ostream* log = nullptr);

std::string trials_csv_header();
std::string summary_csv(const SweepSummary& summary);
std::string rate_report(const ExperimentConfig& config, const ExperimentResult& result);

} // namespace krrlab
