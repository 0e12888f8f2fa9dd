#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mmd2d/antenna.hpp"
#include "mmd2d/channel.hpp"
#include "mmd2d/coverage_curve.hpp"
#include "mmd2d/geometry.hpp"
#include "mmd2d/stats.hpp"

namespace mmd2d::montecarlo {

struct BlockageSettings {
  bool enabled = true;
  /// Blockage centers per m^2.
  double intensity = 30e-6;
  BlockageSizeBounds bounds;
};

struct TrialConfig {
  Region region = Region::centered_square(10'000.0);
  std::size_t iterations = 10'000;
  std::uint64_t master_seed = 1;
  double d0_m = 50.0;
  /// Transmitter PPP density per m^2.
  double density_lambda = 50e-6;
  BlockageSettings blockages;
  LosMode los_mode = LosMode::ball;
  /// In ball mode, candidates inside the ball are kept with probability
  /// ball.lambda_l / density_lambda.
  LosBall ball;
  AntennaPattern pattern;
  LinkBudget budget;
  double min_distance_m = kDefaultMinDistance;
  /// Worker threads; 0 selects std::thread::hardware_concurrency().
  unsigned threads = 1;
  /// Replaces the desired link's Exp(1) fading draw when set.
  std::optional<double> fixed_desired_fading;

  void validate() const;
};

struct TrialOutcome {
  double sinr = 0.0;
  double desired_gain = 0.0;
  double interference_w = 0.0;
  std::size_t interferer_count = 0;
};

enum class InterfererError { without_error, with_error };

/// One network realization around a receiver at the origin. Deterministic in
/// (config.master_seed, trial_index).
TrialOutcome run_trial(const TrialConfig& config, const AlignmentErrorModel& model,
                       std::size_t trial_index);

/// All config.iterations trials, indexed by trial. The result does not depend
/// on config.threads.
std::vector<TrialOutcome> run_trials(const TrialConfig& config, const AlignmentErrorModel& model);

/// Fraction of trials with SINR >= gamma for each gamma in the grid (dB), with
/// Wilson 95% intervals. One trial population serves the whole grid.
CoverageCurve estimate_coverage(const TrialConfig& config, const AlignmentErrorModel& model,
                                std::span<const double> gamma_db_grid);

/// Simulated coverage at a fixed linear threshold for each link distance.
CoverageCurve estimate_coverage_vs_distance(const TrialConfig& config,
                                            const AlignmentErrorModel& model, double gamma,
                                            std::span<const double> d0_grid);

/// Step CDF of gain(sample_error(model)) over n_samples draws.
stats::EmpiricalCdf empirical_gain_cdf(const AntennaPattern& pattern,
                                       const AlignmentErrorModel& model, std::size_t n_samples,
                                       std::uint64_t seed);

/// Aggregate interference over n_realizations realizations. with_error adds an
/// independent draw from `model` to each interferer's uniform bore-sight; the
/// realizations are otherwise identical between the two settings.
stats::EmpiricalCdf empirical_interference_cdf(const TrialConfig& config,
                                               const AlignmentErrorModel& model,
                                               InterfererError setting,
                                               std::size_t n_realizations);

struct DegradationReport {
  std::vector<double> abscissa;
  /// (P_perfect - P_err) / P_perfect; empty where P_perfect < 0.01.
  std::vector<std::optional<double>> loss;
  std::optional<double> max_loss;
};

DegradationReport degradation_report(const CoverageCurve& perfect,
                                     const CoverageCurve& misaligned);

struct LosCalibration {
  /// Fraction of in-ball transmitters with a clear line of sight.
  double p_l = 1.0;
  double std_error = 0.0;
  std::size_t candidates = 0;
  std::size_t retained = 0;
  /// p_l * density_lambda, per m^2.
  double lambda_l = 0.0;
};

/// Estimates p_L by running blockage-mode LOS tests on n_realizations
/// realizations. With blockages disabled this returns p_l = 1 exactly.
LosCalibration calibrate_los(const TrialConfig& config, std::size_t n_realizations);

/// Runs body(i) for i in [0, n) on up to `threads` workers (0 = auto).
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

unsigned resolve_threads(unsigned requested);

}  // namespace mmd2d::montecarlo
