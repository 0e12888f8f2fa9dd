#pragma once

#include <span>

#include "mmd2d/antenna.hpp"
#include "mmd2d/channel.hpp"
#include "mmd2d/coverage_curve.hpp"
#include "mmd2d/geometry.hpp"

namespace mmd2d::analytic {

struct AnalyticParams {
  LosBall ball;
  LinkBudget budget;
  AntennaPattern pattern;
  double d0_m = 50.0;

  /// 2 / alpha; must lie in (0, 1).
  double delta() const { return 2.0 / budget.alpha; }
  void validate() const;
};

/// int_0^{pi/tau} g_m^delta cos^{2 delta}(tau*theta/2) dtheta, in closed form.
double vartheta(const AntennaPattern& pattern, double delta);

/// E_{h,beta}[ int_0^R (1 - exp(-rho h G(beta) r^-alpha)) r dr ] with h ~ Exp(1)
/// and beta ~ U(-pi, pi), in closed form:
///   chi(rho) = R^2/(2 tau) (1 - 2F1(-delta, 1/2; 1-delta; -rho g_m R^-alpha))
///              - Gamma(-delta) delta / (2 pi) rho^delta Gamma(1+delta) vartheta.
double chi(double rho, const AnalyticParams& params);

/// E[exp(-rho I_n)] = exp(-2 pi lambda_L chi(rho)).
double laplace_interference(double rho, const AnalyticParams& params);

/// P[SINR >= gamma] for the typical receiver, gamma linear. Error models are
/// integrated in the error-angle variable over [0, min(eps0, pi/tau)]; the
/// zero-gain atom contributes nothing.
double coverage_probability(double gamma, const AnalyticParams& params,
                            const AlignmentErrorModel& model);

/// Coverage at each d0 in `d0_grid` (meters) for a fixed linear threshold.
CoverageCurve coverage_vs_distance(double gamma, std::span<const double> d0_grid,
                                   const AnalyticParams& params,
                                   const AlignmentErrorModel& model);

/// Coverage along a grid of thresholds in dB.
CoverageCurve coverage_curve(std::span<const double> gamma_db_grid, const AnalyticParams& params,
                             const AlignmentErrorModel& model);

namespace detail {
/// chi through the 2F1 closed form, valid for every rho > 0.
double chi_closed_form(double rho, const AnalyticParams& params);
/// chi for large rho g_m R^-alpha, with the two rho^delta terms cancelled
/// analytically. Requires delta away from 1/2.
double chi_large_argument(double rho, const AnalyticParams& params);
/// x = rho g_m R^-alpha above which chi switches to chi_large_argument.
inline constexpr double kLargeArgument = 1e4;
}  // namespace detail

}  // namespace mmd2d::analytic
