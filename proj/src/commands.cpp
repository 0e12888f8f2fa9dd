#include "mmd2d/commands.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "mmd2d/units.hpp"

namespace mmd2d::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string prob(double p) { return num("%.6f", p); }

}  // namespace

std::string command_name(Command command) {
  switch (command) {
    case Command::coverage: return "coverage";
    case Command::gain_cdf: return "gain-cdf";
    case Command::interference_cdf: return "interference-cdf";
    case Command::distance_sweep: return "distance-sweep";
    case Command::calibrate_los: return "calibrate-los";
  }
  return "unknown";
}

std::uint64_t config_digest(const RunConfig& config) {
  std::string text;
  for (const auto& [k, v] : config.entries()) text += k + " = " + v + "\n";
  return fnv1a64(text);
}

std::string csv_header(const RunConfig& config, Command command,
                       const std::vector<std::pair<std::string, std::string>>& extra) {
  std::ostringstream os;
  os << "# mmwave_d2d " << command_name(command) << "\n";
  for (const auto& [k, v] : config.entries()) os << "# " << k << " = " << v << "\n";
  for (const auto& [k, v] : extra) os << "# " << k << " = " << v << "\n";
  char digest[32];
  std::snprintf(digest, sizeof digest, "%016" PRIx64, config_digest(config));
  os << "# config_digest = " << digest << "\n";
  return os.str();
}

ResolvedLos resolve_los(const RunConfig& config, unsigned threads) {
  if (config.lambda_l_per_km2) {
    const double p =
        config.lambda_per_km2 > 0.0 ? *config.lambda_l_per_km2 / config.lambda_per_km2 : 1.0;
    return {p, 0.0, "override"};
  }
  if (!config.blockages || config.blockage_per_km2 == 0.0) return {1.0, 0.0, "no-blockages"};
  auto tc = trial_config(config, units::per_km2_to_per_m2(config.lambda_per_km2), 0.0, threads);
  const auto cal = montecarlo::calibrate_los(tc, config.calibration_iterations);
  return {cal.p_l, cal.std_error, "calibrated"};
}

analytic::AnalyticParams analytic_params(const RunConfig& config, double lambda_l_per_m2) {
  analytic::AnalyticParams p;
  p.ball = LosBall{config.r_m, lambda_l_per_m2};
  p.budget = config.budget();
  p.pattern = config.pattern();
  p.d0_m = config.d0_m;
  return p;
}

montecarlo::TrialConfig trial_config(const RunConfig& config, double density_per_m2,
                                     double lambda_l_per_m2, unsigned threads) {
  montecarlo::TrialConfig tc;
  tc.region = Region::centered_square(config.region_km * 1000.0);
  tc.iterations = config.iterations;
  tc.master_seed = config.seed;
  tc.d0_m = config.d0_m;
  tc.density_lambda = density_per_m2;
  tc.blockages.enabled = config.blockages;
  tc.blockages.intensity = units::per_km2_to_per_m2(config.blockage_per_km2);
  tc.blockages.bounds = BlockageSizeBounds{config.blockage_min_m, config.blockage_max_m};
  tc.los_mode = config.los_mode;
  tc.ball = LosBall{config.r_m, lambda_l_per_m2};
  tc.pattern = config.pattern();
  tc.budget = config.budget();
  tc.min_distance_m = config.d_min_m;
  tc.threads = threads;
  return tc;
}

std::vector<AlignmentErrorModel> selected_models(const RunConfig& config, Command command) {
  if (config.error == "perfect") return {PerfectAlignment{}};
  if (config.error == "uniform") return {UniformError{config.eps0}};
  if (config.error == "gaussian") return {TruncatedGaussianError{config.s2, config.eps0}};
  if (!config.models.empty()) return config.models;
  switch (command) {
    case Command::gain_cdf:
      return {UniformError{0.2 * kPi}, UniformError{0.4 * kPi},
              TruncatedGaussianError{config.s2, 0.2 * kPi},
              TruncatedGaussianError{config.s2, 0.4 * kPi}};
    case Command::interference_cdf:
      return {UniformError{config.eps0}};
    case Command::distance_sweep:
      return {PerfectAlignment{}, UniformError{config.eps0},
              TruncatedGaussianError{config.s2, config.eps0}};
    case Command::coverage:
    case Command::calibrate_los:
      break;
  }
  return {PerfectAlignment{}, UniformError{0.2 * kPi}, UniformError{0.4 * kPi},
          TruncatedGaussianError{config.s2, config.eps0}};
}

namespace {

std::vector<std::pair<std::string, std::string>> los_lines(const ResolvedLos& los,
                                                           double lambda_per_km2) {
  return {{"resolved_p_l", format_double(los.p_l)},
          {"resolved_p_l_std_error", format_double(los.std_error)},
          {"resolved_p_l_source", los.source},
          {"resolved_lambda_l_per_km2", format_double(los.p_l * lambda_per_km2)}};
}

}  // namespace

std::string cmd_coverage(const RunConfig& config, unsigned threads) {
  config.validate();
  const auto los = resolve_los(config, threads);
  const double lambda = units::per_km2_to_per_m2(config.lambda_per_km2);
  const double lambda_l = los.p_l * lambda;
  const auto grid = config.gamma_db.values();
  const auto params = analytic_params(config, lambda_l);
  const auto tc = trial_config(config, lambda, lambda_l, threads);
  const bool want_analytic = config.engine != Engine::sim;
  const bool want_sim = config.engine != Engine::analytic;

  std::ostringstream os;
  os << csv_header(config, Command::coverage, los_lines(los, config.lambda_per_km2));
  os << "model,gamma_db";
  if (want_analytic) os << ",analytic";
  if (want_sim) os << ",sim,ci_low,ci_high";
  os << "\n";
  for (const auto& model : selected_models(config, Command::coverage)) {
    CoverageCurve a;
    CoverageCurve s;
    if (want_analytic) a = analytic::coverage_curve(grid, params, model);
    if (want_sim) s = montecarlo::estimate_coverage(tc, model, grid);
    const auto label = describe(model);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      os << label << "," << num("%g", grid[i]);
      if (want_analytic) os << "," << prob(a.estimates[i]);
      if (want_sim) {
        os << "," << prob(s.estimates[i]) << "," << prob(s.ci_low[i]) << "," << prob(s.ci_high[i]);
      }
      os << "\n";
    }
  }
  return os.str();
}

std::string cmd_gain_cdf(const RunConfig& config, unsigned /*threads*/) {
  config.validate();
  const auto pattern = config.pattern();
  std::ostringstream os;
  os << csv_header(config, Command::gain_cdf, {});
  os << "model,gain,closed_form_cdf,empirical_cdf,ks\n";
  const std::size_t points = config.gain_grid_points;
  for (const auto& model : selected_models(config, Command::gain_cdf)) {
    const auto empirical =
        montecarlo::empirical_gain_cdf(pattern, model, config.gain_samples, config.seed);
    const double ks = stats::ks_statistic(
        empirical, [&](double g) { return gain_cdf(pattern, model, g); });
    const auto label = describe(model);
    for (std::size_t i = 0; i < points; ++i) {
      const double g = pattern.g_m * static_cast<double>(i) / static_cast<double>(points - 1);
      os << label << "," << num("%.6g", g) << "," << prob(gain_cdf(pattern, model, g)) << ","
         << prob(empirical(g)) << "," << prob(ks) << "\n";
    }
  }
  return os.str();
}

std::string cmd_interference_cdf(const RunConfig& config, unsigned threads) {
  config.validate();
  const auto los = resolve_los(config, threads);
  const double lambda = units::per_km2_to_per_m2(config.interference_lambda_per_km2);
  const auto tc = trial_config(config, lambda, los.p_l * lambda, threads);
  const auto model = selected_models(config, Command::interference_cdf).front();

  const auto without = montecarlo::empirical_interference_cdf(
      tc, model, montecarlo::InterfererError::without_error, config.interference_realizations);
  const auto with = montecarlo::empirical_interference_cdf(
      tc, model, montecarlo::InterfererError::with_error, config.interference_realizations);
  const double ks = stats::ks_two_sample(without, with);

  // Evaluate both CDFs at 201 quantiles of the pooled sample.
  std::vector<double> pooled(without.sorted().begin(), without.sorted().end());
  pooled.insert(pooled.end(), with.sorted().begin(), with.sorted().end());
  std::sort(pooled.begin(), pooled.end());
  std::vector<double> grid;
  constexpr std::size_t kPoints = 201;
  for (std::size_t i = 0; i < kPoints; ++i) {
    const auto idx = i * (pooled.size() - 1) / (kPoints - 1);
    if (grid.empty() || pooled[idx] != grid.back()) grid.push_back(pooled[idx]);
  }

  auto extra = los_lines(los, config.interference_lambda_per_km2);
  extra.emplace_back("interferer_error_model", describe(model));
  std::ostringstream os;
  os << csv_header(config, Command::interference_cdf, extra);
  os << "interference_w,cdf_without_error,cdf_with_error,ks\n";
  for (double x : grid) {
    os << num("%.6e", x) << "," << prob(without(x)) << "," << prob(with(x)) << "," << prob(ks)
       << "\n";
  }
  return os.str();
}

std::string cmd_distance_sweep(const RunConfig& config, unsigned threads) {
  config.validate();
  const auto los = resolve_los(config, threads);
  const double lambda = units::per_km2_to_per_m2(config.lambda_per_km2);
  const double lambda_l = los.p_l * lambda;
  const auto grid = config.d0_grid_m.values();
  const double gamma = units::db_to_linear(config.distance_gamma_db);
  const auto params = analytic_params(config, lambda_l);
  const auto tc = trial_config(config, lambda, lambda_l, threads);
  const bool want_analytic = config.engine != Engine::sim;
  const bool want_sim = config.engine != Engine::analytic;

  std::ostringstream os;
  os << csv_header(config, Command::distance_sweep, los_lines(los, config.lambda_per_km2));
  os << "model,d0_m";
  if (want_analytic) os << ",analytic";
  if (want_sim) os << ",sim,ci_low,ci_high";
  os << "\n";
  for (const auto& model : selected_models(config, Command::distance_sweep)) {
    CoverageCurve a;
    CoverageCurve s;
    if (want_analytic) a = analytic::coverage_vs_distance(gamma, grid, params, model);
    if (want_sim) s = montecarlo::estimate_coverage_vs_distance(tc, model, gamma, grid);
    const auto label = describe(model);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      os << label << "," << num("%g", grid[i]);
      if (want_analytic) os << "," << prob(a.estimates[i]);
      if (want_sim) {
        os << "," << prob(s.estimates[i]) << "," << prob(s.ci_low[i]) << "," << prob(s.ci_high[i]);
      }
      os << "\n";
    }
  }
  return os.str();
}

std::string cmd_calibrate_los(const RunConfig& config, unsigned threads) {
  config.validate();
  const auto tc = trial_config(config, units::per_km2_to_per_m2(config.lambda_per_km2), 0.0, threads);
  const auto cal = montecarlo::calibrate_los(tc, config.calibration_iterations);
  std::ostringstream os;
  os << csv_header(config, Command::calibrate_los, {});
  os << "p_l,std_error,candidates,retained,lambda_per_km2,lambda_l_per_km2\n";
  os << num("%.6f", cal.p_l) << "," << num("%.6f", cal.std_error) << "," << cal.candidates << ","
     << cal.retained << "," << format_double(config.lambda_per_km2) << ","
     << num("%.6f", cal.p_l * config.lambda_per_km2) << "\n";
  return os.str();
}

}  // namespace mmd2d::cli
