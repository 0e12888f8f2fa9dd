#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mmd2d/analytic.hpp"
#include "mmd2d/antenna.hpp"
#include "mmd2d/errors.hpp"
#include "mmd2d/montecarlo.hpp"

namespace mmd2d::cli {

/// Malformed configuration text or flag value.
class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

enum class Engine { analytic, sim, both };

/// Inclusive arithmetic grid lo, lo+step, ..., <= hi.
struct Range {
  double lo = 0.0;
  double hi = 0.0;
  double step = 1.0;
  std::vector<double> values() const;
};

/// Everything a run needs, in user units (dB, dBm, GHz, km^-2, radians).
/// Defaults reproduce the reference parameter table.
struct RunConfig {
  double g_m_dbi = 10.0;
  double tau = 3.0;
  double lambda_per_km2 = 50.0;
  double r_m = 300.0;
  /// Unset means: calibrate from the blockage model (or lambda when
  /// blockages are disabled).
  std::optional<double> lambda_l_per_km2;
  double p_d_w = 1.0;
  double alpha = 2.1;
  double c_db = -62.0;
  double bandwidth_ghz = 1.0;
  double carrier_ghz = 28.0;
  double noise_figure_db = 10.0;
  double d0_m = 50.0;
  double d_min_m = 1.0;

  /// perfect | uniform | gaussian; empty means "use `models` or the
  /// subcommand default set".
  std::string error;
  double eps0 = 0.4 * std::numbers::pi;
  double s2 = 1.0;
  std::vector<AlignmentErrorModel> models;

  Range gamma_db{-10.0, 20.0, 1.0};
  Range d0_grid_m{10.0, 150.0, 10.0};
  double distance_gamma_db = -5.0;

  Engine engine = Engine::both;
  std::size_t iterations = 10'000;
  std::uint64_t seed = 1;
  LosMode los_mode = LosMode::ball;
  bool blockages = true;
  double blockage_per_km2 = 30.0;
  double blockage_min_m = 10.0;
  double blockage_max_m = 50.0;
  double region_km = 10.0;
  std::size_t calibration_iterations = 2'000;
  std::size_t gain_samples = 100'000;
  std::size_t gain_grid_points = 101;
  std::size_t interference_realizations = 5'000;
  double interference_lambda_per_km2 = 300.0;

  /// Throws ValidationError naming the violated invariant.
  void validate() const;

  /// Canonical "key = value" lines in a fixed order.
  std::vector<std::pair<std::string, std::string>> entries() const;

  AntennaPattern pattern() const;
  LinkBudget budget() const;
};

/// Applies one `key = value` setting. Unknown keys and malformed values throw
/// ConfigError.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Parses flat `key = value` text (`#` starts a comment) over `base`.
RunConfig parse_config_text(std::string_view text, RunConfig base = {});

/// Reads and parses a config file.
RunConfig parse_config_file(const std::string& path, RunConfig base = {});

/// Parses an angle: plain radians, "<x>pi", or "<x>deg".
double parse_angle(std::string_view text);

/// Parses "lo:hi:step".
Range parse_range(std::string_view text);

/// "perfect", "uniform:<eps0>" or "gaussian:<s2>:<eps0>".
AlignmentErrorModel parse_model(std::string_view text);

/// Shortest round-trip decimal form.
std::string format_double(double value);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view text);

}  // namespace mmd2d::cli
