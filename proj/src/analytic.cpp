#include "mmd2d/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mmd2d/errors.hpp"
#include "mmd2d/numerics.hpp"
#include "mmd2d/units.hpp"

namespace mmd2d::analytic {

namespace {

constexpr double kPi = std::numbers::pi;
// exp(-x) underflows to zero beyond this.
constexpr double kExpUnderflow = 745.0;
constexpr double kCoverageAbsTol = 1e-6;

double hypergeometric_argument(double rho, const AnalyticParams& p) {
  return std::exp(std::log(rho) + std::log(p.pattern.g_m) -
                  p.budget.alpha * std::log(p.ball.radius_m));
}

}  // namespace

void AnalyticParams::validate() const {
  ball.validate();
  budget.validate();
  pattern.validate();
  if (!(d0_m > 0.0)) throw ValidationError("analytic: d0 must be > 0");
  const double d = delta();
  if (!(d > 0.0 && d < 1.0)) {
    throw ValidationError("analytic: delta = 2/alpha must lie in (0, 1), i.e. alpha > 2");
  }
}

double vartheta(const AntennaPattern& pattern, double delta) {
  return std::pow(pattern.g_m, delta) / pattern.tau * std::sqrt(kPi) *
         numerics::gamma(delta + 0.5) / numerics::gamma(delta + 1.0);
}

namespace detail {

double chi_closed_form(double rho, const AnalyticParams& p) {
  const double delta = p.delta();
  const double r = p.ball.radius_m;
  const double x = hypergeometric_argument(rho, p);
  const double ball_term =
      r * r / (2.0 * p.pattern.tau) * (1.0 - numerics::gauss_2f1(-delta, 0.5, 1.0 - delta, -x));
  const double rho_delta = std::exp(delta * std::log(rho));
  const double gamma_term = numerics::gamma(-delta) * delta / (2.0 * kPi) * rho_delta *
                            numerics::gamma(1.0 + delta) * vartheta(p.pattern, delta);
  return ball_term - gamma_term;
}

double chi_large_argument(double rho, const AnalyticParams& p) {
  // With the 1/z connection formula the rho^delta part of 2F1 cancels the
  // Gamma(-delta) term exactly, leaving only the x^(-1/2) branch.
  const double delta = p.delta();
  const double r = p.ball.radius_m;
  const double x = hypergeometric_argument(rho, p);
  const double coeff = numerics::gamma(1.0 - delta) * numerics::gamma(-delta - 0.5) /
                       (numerics::gamma(-delta) * numerics::gamma(0.5 - delta));
  const double tail = coeff / std::sqrt(x) *
                      numerics::detail::hyp2f1_series(0.5, 0.5 + delta, 1.5 + delta, -1.0 / x);
  return r * r / (2.0 * p.pattern.tau) * (1.0 - tail);
}

}  // namespace detail

double chi(double rho, const AnalyticParams& params) {
  if (!(rho > 0.0)) throw DomainError("chi: rho must be > 0");
  const double x = hypergeometric_argument(rho, params);
  if (x > detail::kLargeArgument && std::abs(params.delta() - 0.5) > 1e-3) {
    return detail::chi_large_argument(rho, params);
  }
  return detail::chi_closed_form(rho, params);
}

double laplace_interference(double rho, const AnalyticParams& params) {
  if (params.ball.lambda_l == 0.0) return 1.0;
  return std::exp(-2.0 * kPi * params.ball.lambda_l * chi(rho, params));
}

double coverage_probability(double gamma, const AnalyticParams& params,
                            const AlignmentErrorModel& model) {
  params.validate();
  validate(model);
  if (!(gamma > 0.0)) throw DomainError("coverage_probability: gamma must be > 0");

  const double noise = params.budget.normalized_noise();
  const double scale = gamma * std::pow(params.d0_m, params.budget.alpha);

  // Coverage conditioned on the desired-link gain g0.
  auto conditional = [&](double g0) {
    if (g0 <= 0.0) return 0.0;
    const double rho = scale / g0;
    const double noise_exponent = rho * noise;
    if (noise_exponent > kExpUnderflow) return 0.0;
    return laplace_interference(rho, params) * std::exp(-noise_exponent);
  };

  if (std::holds_alternative<PerfectAlignment>(model)) return conditional(params.pattern.g_m);

  const double upper = std::min(error_bound(model), params.pattern.half_lobe());
  auto integrand = [&](double eps) {
    return conditional(gain(params.pattern, eps)) * 2.0 * error_density(model, eps);
  };
  numerics::QuadratureOptions opts;
  opts.rel_tol = 1e-8;
  opts.abs_tol = kCoverageAbsTol;
  const double value = numerics::integrate(integrand, 0.0, upper, opts).value;
  return std::clamp(value, 0.0, 1.0);
}

CoverageCurve coverage_vs_distance(double gamma, std::span<const double> d0_grid,
                                   const AnalyticParams& params,
                                   const AlignmentErrorModel& model) {
  CoverageCurve curve;
  curve.kind = Abscissa::distance_m;
  curve.provenance = Provenance::analytic;
  for (double d0 : d0_grid) {
    if (!(d0 > 0.0)) throw DomainError("coverage_vs_distance: d0 must be > 0");
    AnalyticParams at = params;
    at.d0_m = d0;
    const double p = coverage_probability(gamma, at, model);
    curve.abscissa.push_back(d0);
    curve.estimates.push_back(p);
    curve.ci_low.push_back(p);
    curve.ci_high.push_back(p);
  }
  return curve;
}

CoverageCurve coverage_curve(std::span<const double> gamma_db_grid, const AnalyticParams& params,
                             const AlignmentErrorModel& model) {
  CoverageCurve curve;
  curve.kind = Abscissa::gamma_db;
  curve.provenance = Provenance::analytic;
  for (double gdb : gamma_db_grid) {
    const double p = coverage_probability(units::db_to_linear(gdb), params, model);
    curve.abscissa.push_back(gdb);
    curve.estimates.push_back(p);
    curve.ci_low.push_back(p);
    curve.ci_high.push_back(p);
  }
  return curve;
}

}  // namespace mmd2d::analytic
