#include "mmd2d/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "mmd2d/errors.hpp"
#include "mmd2d/units.hpp"

namespace mmd2d::montecarlo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Point2D kReceiver{0.0, 0.0};

std::vector<Interferer> sample_interferers(const TrialConfig& config,
                                           const AlignmentErrorModel& model,
                                           InterfererError setting, std::size_t index) {
  RandomStream tx_rng(config.master_seed, index, StreamTag::transmitters);
  const auto points = sample_ppp(config.density_lambda, config.region, tx_rng);

  std::vector<Blockage> blockages;
  if (config.los_mode == LosMode::blockage && config.blockages.enabled) {
    RandomStream block_rng(config.master_seed, index, StreamTag::blockages);
    blockages = sample_blockages(config.blockages.intensity, config.region,
                                 config.blockages.bounds, block_rng);
  }

  RandomStream thin_rng(config.master_seed, index, StreamTag::thinning);
  const auto los = los_interferers(kReceiver, points, config.ball, config.density_lambda,
                                   config.los_mode, blockages, thin_rng);

  RandomStream mark_rng(config.master_seed, index, StreamTag::interferer_marks);
  RandomStream error_rng(config.master_seed, index, StreamTag::interferer_errors);
  std::vector<Interferer> interferers;
  interferers.reserve(los.size());
  for (const auto& p : los) {
    Interferer i;
    i.position = p;
    i.boresight = mark_rng.uniform(-kPi, kPi);
    i.fading = sample_fading(mark_rng);
    if (setting == InterfererError::with_error) i.boresight += sample_error(model, error_rng);
    interferers.push_back(i);
  }
  return interferers;
}

}  // namespace

void TrialConfig::validate() const {
  region.validate();
  if (iterations < 1) throw ValidationError("trial config: iterations must be >= 1");
  if (!(d0_m > 0.0)) throw ValidationError("trial config: d0 must be > 0");
  if (!(density_lambda >= 0.0)) throw ValidationError("trial config: density must be >= 0");
  if (blockages.enabled) {
    if (!(blockages.intensity >= 0.0)) {
      throw ValidationError("trial config: blockage density must be >= 0");
    }
    blockages.bounds.validate();
  }
  ball.validate();
  pattern.validate();
  budget.validate();
  if (!(min_distance_m > 0.0)) throw ValidationError("trial config: min distance must be > 0");
}

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

TrialOutcome run_trial(const TrialConfig& config, const AlignmentErrorModel& model,
                       std::size_t trial_index) {
  const auto interferers =
      sample_interferers(config, model, InterfererError::without_error, trial_index);
  const double interference = aggregate_interference(interferers, kReceiver, config.pattern,
                                                     config.budget, config.min_distance_m);

  // Desired transmitter at distance d0 on a uniform bearing; its bore-sight
  // misses the receiver by the alignment error.
  RandomStream link_rng(config.master_seed, trial_index, StreamTag::desired_link);
  // With an omni-directional receiver the bearing does not enter the SINR; it
  // is drawn to keep the stream layout fixed.
  [[maybe_unused]] const double bearing = link_rng.uniform(-kPi, kPi);
  // Fading before the error draw, so every model sees the same h0 for a given
  // trial and model comparisons are paired.
  const double h0_draw = sample_fading(link_rng);
  const double h0 = config.fixed_desired_fading ? *config.fixed_desired_fading : h0_draw;
  const double error = sample_error(model, link_rng);
  const double g0 = gain(config.pattern, error);

  TrialOutcome out;
  out.desired_gain = g0;
  out.interference_w = interference;
  out.interferer_count = interferers.size();
  out.sinr = sinr(g0, h0, config.d0_m, interference, config.budget);
  return out;
}

std::vector<TrialOutcome> run_trials(const TrialConfig& config,
                                     const AlignmentErrorModel& model) {
  config.validate();
  validate(model);
  std::vector<TrialOutcome> outcomes(config.iterations);
  parallel_for(config.iterations, config.threads,
               [&](std::size_t i) { outcomes[i] = run_trial(config, model, i); });
  return outcomes;
}

namespace {

void append_point(CoverageCurve& curve, double x, std::size_t covered, std::size_t trials) {
  const double p = static_cast<double>(covered) / static_cast<double>(trials);
  const auto ci = stats::wilson_interval(covered, trials);
  curve.abscissa.push_back(x);
  curve.estimates.push_back(p);
  curve.ci_low.push_back(std::min(ci.low, p));
  curve.ci_high.push_back(std::max(ci.high, p));
}

}  // namespace

CoverageCurve estimate_coverage(const TrialConfig& config, const AlignmentErrorModel& model,
                                std::span<const double> gamma_db_grid) {
  if (gamma_db_grid.empty()) throw ValidationError("estimate_coverage: empty threshold grid");
  const auto outcomes = run_trials(config, model);
  std::vector<double> sinrs;
  sinrs.reserve(outcomes.size());
  for (const auto& o : outcomes) sinrs.push_back(o.sinr);
  std::sort(sinrs.begin(), sinrs.end());

  CoverageCurve curve;
  curve.kind = Abscissa::gamma_db;
  curve.provenance = Provenance::simulated;
  for (double gdb : gamma_db_grid) {
    const double gamma = units::db_to_linear(gdb);
    const auto first_covered = std::lower_bound(sinrs.begin(), sinrs.end(), gamma);
    const auto covered = static_cast<std::size_t>(sinrs.end() - first_covered);
    append_point(curve, gdb, covered, sinrs.size());
  }
  return curve;
}

CoverageCurve estimate_coverage_vs_distance(const TrialConfig& config,
                                            const AlignmentErrorModel& model, double gamma,
                                            std::span<const double> d0_grid) {
  CoverageCurve curve;
  curve.kind = Abscissa::distance_m;
  curve.provenance = Provenance::simulated;
  for (double d0 : d0_grid) {
    TrialConfig at = config;
    at.d0_m = d0;
    const auto outcomes = run_trials(at, model);
    const auto covered = static_cast<std::size_t>(std::count_if(
        outcomes.begin(), outcomes.end(), [gamma](const TrialOutcome& o) { return o.sinr >= gamma; }));
    append_point(curve, d0, covered, outcomes.size());
  }
  return curve;
}

stats::EmpiricalCdf empirical_gain_cdf(const AntennaPattern& pattern,
                                       const AlignmentErrorModel& model, std::size_t n_samples,
                                       std::uint64_t seed) {
  pattern.validate();
  validate(model);
  RandomStream rng(seed, 0, StreamTag::gain_samples);
  std::vector<double> gains;
  gains.reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) gains.push_back(gain(pattern, sample_error(model, rng)));
  return stats::EmpiricalCdf(std::move(gains));
}

stats::EmpiricalCdf empirical_interference_cdf(const TrialConfig& config,
                                               const AlignmentErrorModel& model,
                                               InterfererError setting,
                                               std::size_t n_realizations) {
  config.validate();
  validate(model);
  std::vector<double> samples(n_realizations);
  parallel_for(n_realizations, config.threads, [&](std::size_t i) {
    const auto interferers = sample_interferers(config, model, setting, i);
    samples[i] = aggregate_interference(interferers, kReceiver, config.pattern, config.budget,
                                        config.min_distance_m);
  });
  return stats::EmpiricalCdf(std::move(samples));
}

DegradationReport degradation_report(const CoverageCurve& perfect,
                                     const CoverageCurve& misaligned) {
  if (perfect.abscissa != misaligned.abscissa) {
    throw ValidationError("degradation_report: curves must share the same grid");
  }
  DegradationReport report;
  report.abscissa = perfect.abscissa;
  for (std::size_t i = 0; i < perfect.size(); ++i) {
    const double p = perfect.estimates[i];
    if (p < 0.01) {
      report.loss.emplace_back();
      continue;
    }
    const double loss = (p - misaligned.estimates[i]) / p;
    report.loss.emplace_back(loss);
    if (!report.max_loss || loss > *report.max_loss) report.max_loss = loss;
  }
  return report;
}

LosCalibration calibrate_los(const TrialConfig& config, std::size_t n_realizations) {
  config.validate();
  LosCalibration cal;
  if (!config.blockages.enabled || config.blockages.intensity == 0.0 || n_realizations == 0) {
    cal.p_l = 1.0;
    cal.lambda_l = config.density_lambda;
    return cal;
  }
  LosBall everything = config.ball;
  everything.lambda_l = config.density_lambda;

  std::vector<std::size_t> candidates(n_realizations);
  std::vector<std::size_t> retained(n_realizations);
  parallel_for(n_realizations, config.threads, [&](std::size_t i) {
    RandomStream tx_rng(config.master_seed, i, StreamTag::calibration);
    const auto points = sample_ppp(config.density_lambda, config.region, tx_rng);
    RandomStream block_rng(config.master_seed, i, StreamTag::blockages);
    const auto blockages = sample_blockages(config.blockages.intensity, config.region,
                                            config.blockages.bounds, block_rng);
    RandomStream unused(config.master_seed, i, StreamTag::thinning);
    const auto in_ball =
        los_interferers(kReceiver, points, everything, config.density_lambda, LosMode::ball, {}, unused);
    const auto los = los_interferers(kReceiver, points, everything, config.density_lambda,
                                     LosMode::blockage, blockages, unused);
    candidates[i] = in_ball.size();
    retained[i] = los.size();
  });

  for (std::size_t i = 0; i < n_realizations; ++i) {
    cal.candidates += candidates[i];
    cal.retained += retained[i];
  }
  if (cal.candidates == 0) {
    cal.p_l = 1.0;
  } else {
    cal.p_l = static_cast<double>(cal.retained) / static_cast<double>(cal.candidates);
    // Ratio-estimator standard error across realizations.
    const double n = static_cast<double>(n_realizations);
    const double mean_candidates = static_cast<double>(cal.candidates) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < n_realizations; ++i) {
      const double r = static_cast<double>(retained[i]) - cal.p_l * static_cast<double>(candidates[i]);
      ss += r * r;
    }
    if (n_realizations > 1) cal.std_error = std::sqrt(ss / (n * (n - 1.0))) / mean_candidates;
  }
  cal.lambda_l = cal.p_l * config.density_lambda;
  return cal;
}

}  // namespace mmd2d::montecarlo
