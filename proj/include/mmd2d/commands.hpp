#pragma once

#include <string>
#include <vector>

#include "mmd2d/analytic.hpp"
#include "mmd2d/config.hpp"
#include "mmd2d/montecarlo.hpp"

// Subcommand bodies. Each returns the complete CSV text (with its `#`
// metadata header) so the caller writes nothing on failure.
namespace mmd2d::cli {

enum class Command { coverage, gain_cdf, interference_cdf, distance_sweep, calibrate_los };

struct ResolvedLos {
  double p_l = 1.0;
  double std_error = 0.0;
  /// How p_l was obtained: "override", "no-blockages" or "calibrated".
  std::string source;
};

/// p_L = lambda_L / lambda: explicit override, 1 without blockages, or a
/// blockage-mode calibration pre-pass.
ResolvedLos resolve_los(const RunConfig& config, unsigned threads);

analytic::AnalyticParams analytic_params(const RunConfig& config, double lambda_l_per_m2);

montecarlo::TrialConfig trial_config(const RunConfig& config, double density_per_m2,
                                     double lambda_l_per_m2, unsigned threads);

/// Models selected by `error`, else `models`, else the subcommand's default set.
std::vector<AlignmentErrorModel> selected_models(const RunConfig& config, Command command);

/// Metadata header: resolved config, extra lines, and the config digest.
std::string csv_header(const RunConfig& config, Command command,
                       const std::vector<std::pair<std::string, std::string>>& extra);

std::uint64_t config_digest(const RunConfig& config);

std::string cmd_coverage(const RunConfig& config, unsigned threads);
std::string cmd_gain_cdf(const RunConfig& config, unsigned threads);
std::string cmd_interference_cdf(const RunConfig& config, unsigned threads);
std::string cmd_distance_sweep(const RunConfig& config, unsigned threads);
std::string cmd_calibrate_los(const RunConfig& config, unsigned threads);

std::string command_name(Command command);

}  // namespace mmd2d::cli
