#pragma once

#include <cstddef>
#include <functional>

// Special functions and adaptive quadrature used by the analytic engine.
// Everything here is a pure function of its arguments.
namespace mmd2d::numerics {

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
};

enum class Endpoints {
  /// Integrand bounded near both ends.
  regular,
  /// Integrand may diverge like (x-lo)^(-1/2) and/or (hi-x)^(-1/2). The
  /// interval is mapped through x = lo + (hi-lo) * sin^2(pi*u/2), which makes
  /// such singularities bounded in u.
  sqrt_singular,
};

struct QuadratureOptions {
  double rel_tol = 1e-10;
  /// Absolute floor on the requested error.
  double abs_tol = 1e-14;
  std::size_t max_subdivisions = 4000;
  Endpoints endpoints = Endpoints::regular;
};

/// Gamma function. Throws DomainError at non-positive integers and
/// std::overflow_error when the result is not representable.
double gamma(double x);

/// 1 / Gamma(x), equal to 0 at the poles.
double reciprocal_gamma(double x);

/// Upper incomplete Gamma function Gamma(a, x) = int_x^inf t^(a-1) e^(-t) dt.
/// Negative non-integer a is supported for x > 0.
double upper_incomplete_gamma(double a, double x);

double erf(double x);

/// Gauss hypergeometric function 2F1(a, b; c; z) for real z <= 0.
///
/// Argument strategy:
///  - z in (-0.5, 0]: direct power series;
///  - z in [-kReciprocalThreshold, -0.5]: Pfaff transformation
///    (1-z)^(-b) 2F1(c-a, b; c; z/(z-1)), whose argument lies in (0, 1);
///  - z < -kReciprocalThreshold: the 1/z connection formula, unless b-a is
///    within 1e-3 of an integer, where the Pfaff route is kept.
/// Series stop once a term falls below 1e-15 of the running sum.
double gauss_2f1(double a, double b, double c, double z);

inline constexpr double kReciprocalThreshold = 50.0;

/// Adaptive Gauss-Kronrod (7/15) quadrature with global subdivision.
/// Throws ConvergenceError (carrying the best estimate) when the subdivision
/// cap is hit.
QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           const QuadratureOptions& options);

inline QuadratureResult integrate(const std::function<double(double)>& f, double lo,
                                  double hi, double rel_tol) {
  QuadratureOptions opts;
  opts.rel_tol = rel_tol;
  return integrate(f, lo, hi, opts);
}

namespace detail {
/// Plain power series sum; z must satisfy |z| < 1.
double hyp2f1_series(double a, double b, double c, double z);
/// Pfaff-transformed evaluation, valid for any z < 1.
double hyp2f1_pfaff(double a, double b, double c, double z);
/// 1/z connection formula for z < -1; b-a must not be an integer.
double hyp2f1_reciprocal(double a, double b, double c, double z);
}  // namespace detail

}  // namespace mmd2d::numerics
