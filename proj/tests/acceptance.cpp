// Acceptance checks, one per criterion. Usage: acceptance <1-8> (no argument
// runs all). Prints one PASS/FAIL line per criterion; exit status is non-zero
// if any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "mmd2d/analytic.hpp"
#include "mmd2d/commands.hpp"
#include "mmd2d/config.hpp"
#include "mmd2d/montecarlo.hpp"
#include "mmd2d/numerics.hpp"
#include "mmd2d/units.hpp"
#include "oracles.hpp"

using namespace mmd2d;
constexpr double kPi = std::numbers::pi;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

unsigned env_threads() {
  const char* v = std::getenv("MMWAVE_D2D_THREADS");
  return v ? static_cast<unsigned>(std::strtoul(v, nullptr, 10)) : 0u;
}

std::vector<double> gamma_grid(double step) {
  std::vector<double> g;
  for (double x = -10.0; x <= 20.0 + 1e-9; x += step) g.push_back(x);
  return g;
}

// Engine cross-validation on the reference parameter set with calibrated
// LOS density.
Verdict criterion_1() {
  cli::RunConfig cfg;
  const unsigned threads = env_threads();
  const auto los = cli::resolve_los(cfg, threads);
  const double lambda = units::per_km2_to_per_m2(cfg.lambda_per_km2);
  const double lambda_l = los.p_l * lambda;
  const auto params = cli::analytic_params(cfg, lambda_l);
  const auto tc = cli::trial_config(cfg, lambda, lambda_l, threads);
  const auto grid = gamma_grid(2.0);
  const std::vector<AlignmentErrorModel> models = {
      PerfectAlignment{},
      UniformError{0.2 * kPi},
      UniformError{0.4 * kPi},
      TruncatedGaussianError{1.0, 0.4 * kPi},
      TruncatedGaussianError{4.0, 0.4 * kPi},
      TruncatedGaussianError{9.0, 0.4 * kPi}};
  bool ok = true;
  double worst_excess = -1.0;
  std::string worst;
  for (const auto& m : models) {
    const auto a = analytic::coverage_curve(grid, params, m);
    const auto s = montecarlo::estimate_coverage(tc, m, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double half = 0.5 * (s.ci_high[i] - s.ci_low[i]);
      const double tol = std::max(0.03, 3.0 * half);
      const double gap = std::abs(a.estimates[i] - s.estimates[i]);
      if (gap > tol) ok = false;
      if (gap - tol > worst_excess) {
        worst_excess = gap - tol;
        worst = describe(m) + " @ " + fmt("%g", grid[i]) + " dB: |" + fmt("%.4f", a.estimates[i]) +
                " - " + fmt("%.4f", s.estimates[i]) + "| vs tol " + fmt("%.4f", tol);
      }
    }
  }
  return {ok, "p_L=" + fmt("%.4f", los.p_l) + ", 6 models x 16 thresholds x " +
                  std::to_string(tc.iterations) + " trials; tightest point " + worst};
}

// chi against the brute-force triple-quadrature expectation.
Verdict criterion_2() {
  bool ok = true;
  double worst = 0.0;
  std::string where;
  for (double delta : {0.5, 2.0 / 2.1, 0.9}) {
    analytic::AnalyticParams p;
    p.budget.alpha = 2.0 / delta;
    for (int e = -3; e <= 3; ++e) {
      const double x = std::pow(10.0, e);  // rho g_m R^-alpha
      const double rho = x * std::pow(p.ball.radius_m, p.budget.alpha) / p.pattern.g_m;
      const double got = analytic::chi(rho, p);
      const double want = oracle::chi_triple_quadrature(rho, p.pattern.g_m, p.pattern.tau,
                                                        p.budget.alpha, p.ball.radius_m);
      const double rel = std::abs(got - want) / want;
      if (!(rel <= 1e-3)) ok = false;
      if (rel > worst || std::isnan(rel)) {
        worst = rel;
        where = "delta=" + fmt("%.4f", delta) + ", x=1e" + std::to_string(e);
      }
    }
  }
  return {ok, "max relative error " + fmt("%.2e", worst) + " at " + where +
                  " over 3 exponents x 7 decades"};
}

// 2F1 against the Euler integral (stepped down with a contiguous relation).
Verdict criterion_3() {
  std::vector<double> zs{0.0};
  for (double z = 1e-4; z <= 1e4 * 1.0001; z *= std::pow(10.0, 0.25)) zs.push_back(-z);
  for (double z : {-0.5, -1.0, -49.9, -50.0, -50.1}) zs.push_back(z);
  bool ok = true;
  double worst = 0.0;
  std::string where;
  for (double delta : {0.5, 2.0 / 2.1, 0.9}) {
    const double a = -delta, b = 0.5, c = 1.0 - delta;
    for (double z : zs) {
      const double got = numerics::gauss_2f1(a, b, c, z);
      const double want = z == 0.0 ? 1.0 : oracle::hyp2f1_euler_contiguous(a, b, c, z);
      const double rel = std::abs(got - want) / std::abs(want);
      if (!(rel <= 1e-8)) ok = false;
      if (rel > worst || std::isnan(rel)) {
        worst = rel;
        where = "delta=" + fmt("%.4f", delta) + ", z=" + fmt("%g", z);
      }
    }
  }
  return {ok, "max relative error " + fmt("%.2e", worst) + " at " + where + " over " +
                  std::to_string(3 * zs.size()) + " points"};
}

// Gain laws: KS, normalization and atom frequency.
Verdict criterion_4() {
  const AntennaPattern pat;
  const std::vector<AlignmentErrorModel> models = {
      UniformError{0.2 * kPi}, UniformError{0.4 * kPi}, TruncatedGaussianError{1.0, 0.2 * kPi},
      TruncatedGaussianError{1.0, 0.4 * kPi}};
  constexpr std::size_t n = 100'000;
  bool ok = true;
  std::string detail;
  std::uint64_t seed = 1;
  for (const auto& m : models) {
    const auto ecdf = montecarlo::empirical_gain_cdf(pat, m, n, seed++);
    const double ks = stats::ks_statistic(ecdf, [&](double g) { return gain_cdf(pat, m, g); });

    const auto [lo, hi] = continuous_support(pat, m);
    numerics::QuadratureOptions opts;
    opts.endpoints = numerics::Endpoints::sqrt_singular;
    opts.rel_tol = 1e-12;
    const double atom = zero_gain_mass(pat, m);
    const double mass =
        numerics::integrate([&](double g) { return (g <= lo || g >= hi) ? 0.0 : gain_pdf(pat, m, g); },
                            lo, hi, opts)
            .value;
    const double norm_err = std::abs(mass + atom - 1.0);

    const double zeros = ecdf(0.0);
    const double sigma = std::sqrt(atom * (1.0 - atom) / n);
    const bool atom_ok = atom == 0.0 ? zeros == 0.0 : std::abs(zeros - atom) <= 3.0 * sigma;

    const bool this_ok = ks < 0.01 && norm_err <= 1e-6 && atom_ok;
    ok = ok && this_ok;
    detail += describe(m) + " KS=" + fmt("%.4f", ks) + " norm_err=" + fmt("%.1e", norm_err) +
              " atom=" + fmt("%.4f", atom) + "/" + fmt("%.4f", zeros) + "; ";
  }
  return {ok, detail};
}

// Relative coverage loss of the Gaussian(s2=1, 0.4pi) model vs perfect alignment.
Verdict criterion_5() {
  cli::RunConfig cfg;
  const auto los = cli::resolve_los(cfg, env_threads());
  const auto params = cli::analytic_params(cfg, los.p_l * units::per_km2_to_per_m2(cfg.lambda_per_km2));
  const auto grid = gamma_grid(1.0);
  const auto perfect = analytic::coverage_curve(grid, params, PerfectAlignment{});
  const auto gauss = analytic::coverage_curve(grid, params, TruncatedGaussianError{1.0, 0.4 * kPi});
  const auto report = montecarlo::degradation_report(perfect, gauss);
  double at = 0.0, max_gap = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (report.loss[i] && *report.loss[i] == *report.max_loss) at = grid[i];
    max_gap = std::max(max_gap, perfect.estimates[i] - gauss.estimates[i]);
  }
  const double loss = report.max_loss.value_or(0.0);
  const bool ok = loss >= 0.25 && loss <= 0.45;
  return {ok, "max relative loss " + fmt("%.4f", loss) + " at " + fmt("%g", at) +
                  " dB (band [0.25, 0.45]); largest absolute gap " + fmt("%.4f", max_gap)};
}

// With- and without-error interference distributions at 300 per km^2.
Verdict criterion_6() {
  cli::RunConfig cfg;
  cfg.interference_lambda_per_km2 = 300.0;
  cfg.interference_realizations = 5000;
  const unsigned threads = env_threads();
  const auto los = cli::resolve_los(cfg, threads);
  const double lambda = units::per_km2_to_per_m2(cfg.interference_lambda_per_km2);
  const auto tc = cli::trial_config(cfg, lambda, los.p_l * lambda, threads);
  bool ok = true;
  std::string detail;
  for (const AlignmentErrorModel& m :
       {AlignmentErrorModel{UniformError{0.4 * kPi}}, AlignmentErrorModel{TruncatedGaussianError{1.0, 0.4 * kPi}}}) {
    const auto without = montecarlo::empirical_interference_cdf(
        tc, m, montecarlo::InterfererError::without_error, cfg.interference_realizations);
    const auto with = montecarlo::empirical_interference_cdf(
        tc, m, montecarlo::InterfererError::with_error, cfg.interference_realizations);
    const double ks = stats::ks_two_sample(without, with);
    ok = ok && ks <= 0.05;
    detail += describe(m) + " KS=" + fmt("%.4f", ks) + "; ";
  }
  return {ok, detail + std::to_string(cfg.interference_realizations) + " realizations"};
}

// Coverage non-increasing in gamma, eps0, s2 and d0 over random parameter draws.
Verdict criterion_7() {
  constexpr double slack = 1e-6;  // absolute quadrature tolerance
  std::mt19937_64 rng(20240607);
  const auto U = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  int checks = 0, violations = 0;
  std::string first;
  const auto expect_le = [&](double later, double earlier, const std::string& what) {
    ++checks;
    if (later > earlier + slack) {
      if (violations++ == 0) first = what + ": " + fmt("%.8f", later) + " > " + fmt("%.8f", earlier);
    }
  };
  for (int draw = 0; draw < 60; ++draw) {
    analytic::AnalyticParams p;
    p.budget.alpha = U(2.05, 4.0);
    p.pattern = AntennaPattern{units::db_to_linear(U(3.0, 20.0)), U(1.0, 4.0)};
    p.ball = LosBall{U(100.0, 500.0), U(1e-6, 300e-6)};
    p.d0_m = U(5.0, 150.0);
    const double eps_a = U(0.02, 0.95) * kPi, eps_b = U(0.02, 0.95) * kPi;
    const double eps_lo = std::min(eps_a, eps_b), eps_hi = std::max(eps_a, eps_b);
    const double s_a = U(0.05, 10.0), s_b = U(0.05, 10.0);
    const double s_lo = std::min(s_a, s_b), s_hi = std::max(s_a, s_b);
    const double g_a = U(-15.0, 25.0), g_b = U(-15.0, 25.0);
    const double g_lo = units::db_to_linear(std::min(g_a, g_b)), g_hi = units::db_to_linear(std::max(g_a, g_b));
    const double d_a = U(5.0, 200.0), d_b = U(5.0, 200.0);

    const std::vector<AlignmentErrorModel> models = {
        PerfectAlignment{}, UniformError{eps_lo}, TruncatedGaussianError{s_lo, eps_lo}};
    for (const auto& m : models) {
      expect_le(analytic::coverage_probability(g_hi, p, m), analytic::coverage_probability(g_lo, p, m),
                "gamma " + describe(m));
      auto near = p, far = p;
      near.d0_m = std::min(d_a, d_b);
      far.d0_m = std::max(d_a, d_b);
      expect_le(analytic::coverage_probability(g_lo, far, m), analytic::coverage_probability(g_lo, near, m),
                "d0 " + describe(m));
    }
    expect_le(analytic::coverage_probability(g_lo, p, UniformError{eps_hi}),
              analytic::coverage_probability(g_lo, p, UniformError{eps_lo}), "eps0 uniform");
    expect_le(analytic::coverage_probability(g_lo, p, TruncatedGaussianError{s_lo, eps_hi}),
              analytic::coverage_probability(g_lo, p, TruncatedGaussianError{s_lo, eps_lo}), "eps0 gaussian");
    expect_le(analytic::coverage_probability(g_lo, p, TruncatedGaussianError{s_hi, eps_hi}),
              analytic::coverage_probability(g_lo, p, TruncatedGaussianError{s_lo, eps_hi}), "s2 gaussian");
    expect_le(analytic::coverage_probability(g_lo, p, UniformError{eps_lo}),
              analytic::coverage_probability(g_lo, p, PerfectAlignment{}), "perfect vs uniform");
  }

  // Simulated curves are monotone in gamma by construction; check one anyway.
  montecarlo::TrialConfig tc;
  tc.iterations = 2000;
  tc.region = Region::centered_square(2000.0);
  tc.ball.lambda_l = 40e-6;
  const auto sim = montecarlo::estimate_coverage(tc, UniformError{0.4 * kPi}, gamma_grid(1.0));
  for (std::size_t i = 1; i < sim.size(); ++i) expect_le(sim.estimates[i], sim.estimates[i - 1], "sim gamma");

  return {violations == 0, std::to_string(checks) + " comparisons, " + std::to_string(violations) +
                               " violations" + (first.empty() ? "" : " (first: " + first + ")")};
}

// Byte-identical CSV at 1, 4 and auto threads.
Verdict criterion_8() {
  cli::RunConfig cfg;
  cfg.iterations = 2000;
  cfg.calibration_iterations = 300;
  cfg.gamma_db = cli::Range{-10.0, 20.0, 2.0};
  cfg.gain_samples = 20'000;
  cfg.interference_realizations = 1000;
  cfg.d0_grid_m = cli::Range{10.0, 150.0, 20.0};
  cfg.seed = 12345;
  cfg.los_mode = LosMode::blockage;
  using Cmd = std::function<std::string(const cli::RunConfig&, unsigned)>;
  const std::vector<std::pair<std::string, Cmd>> cmds = {
      {"coverage", cli::cmd_coverage},
      {"gain-cdf", cli::cmd_gain_cdf},
      {"interference-cdf", cli::cmd_interference_cdf},
      {"distance-sweep", cli::cmd_distance_sweep},
      {"calibrate-los", cli::cmd_calibrate_los}};
  bool ok = true;
  std::string detail;
  for (const auto& [name, cmd] : cmds) {
    const auto one = cmd(cfg, 1);
    const bool same = one == cmd(cfg, 4) && one == cmd(cfg, 0);
    ok = ok && same;
    detail += name + (same ? " identical" : " DIFFERS") + " (" + std::to_string(one.size()) + " bytes); ";
  }
  return {ok, detail + "auto = " + std::to_string(montecarlo::resolve_threads(0)) + " threads"};
}

const std::vector<std::pair<std::string, std::function<Verdict()>>> kCriteria = {
    {"engine cross-validation", criterion_1},
    {"chi oracle equivalence", criterion_2},
    {"2F1 correctness", criterion_3},
    {"gain-distribution laws", criterion_4},
    {"degradation claim", criterion_5},
    {"interference independence", criterion_6},
    {"monotonicity properties", criterion_7},
    {"determinism", criterion_8},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  if (argc > 1) {
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  } else {
    for (int i = 1; i <= static_cast<int>(kCriteria.size()); ++i) selected.push_back(i);
  }
  int failures = 0;
  for (int id : selected) {
    if (id < 1 || id > static_cast<int>(kCriteria.size())) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 2;
    }
    const auto& [name, run] = kCriteria[id - 1];
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d (%s): %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", id, name.c_str(),
                v.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !v.pass;
  }
  return failures == 0 ? 0 : 1;
}
