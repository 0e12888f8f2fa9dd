#pragma once

#include <string>
#include <utility>
#include <variant>

#include "mmd2d/random.hpp"

namespace mmd2d {

/// Cosine main-lobe pattern: g_m * cos^2(tau*theta/2) for |theta| <= pi/tau,
/// zero elsewhere. g_m is linear (10 dBi -> 10.0).
struct AntennaPattern {
  double g_m = 10.0;
  double tau = 3.0;

  /// Half-width of the main lobe, pi / tau.
  double half_lobe() const;
  void validate() const;
};

struct PerfectAlignment {};

/// epsilon ~ U(-eps0, eps0).
struct UniformError {
  double eps0 = 0.0;
};

/// epsilon ~ N(0, s2) truncated to [-eps0, eps0].
struct TruncatedGaussianError {
  double s2 = 1.0;
  double eps0 = 0.0;
};

using AlignmentErrorModel = std::variant<PerfectAlignment, UniformError, TruncatedGaussianError>;

void validate(const AlignmentErrorModel& model);

/// Short label suitable for a CSV column, e.g. "uniform:eps0=0.4pi".
std::string describe(const AlignmentErrorModel& model);

/// Wraps an angle to (-pi, pi].
double wrap_angle(double theta);

double gain(const AntennaPattern& pattern, double theta);

double sample_error(const AlignmentErrorModel& model, RandomStream& rng);

/// Density of the error angle epsilon at eps (0 outside the support).
/// PerfectAlignment has no density and yields 0.
double error_density(const AlignmentErrorModel& model, double eps);

/// Largest |epsilon| the model can produce (0 for perfect alignment).
double error_bound(const AlignmentErrorModel& model);

/// P[G = 0] = P[|epsilon| > pi/tau].
double zero_gain_mass(const AntennaPattern& pattern, const AlignmentErrorModel& model);

/// Open interval carrying the continuous part of the gain distribution:
/// (kappa*g_m, g_m) when eps0 < pi/tau, else (0, g_m).
std::pair<double, double> continuous_support(const AntennaPattern& pattern,
                                             const AlignmentErrorModel& model);

/// CDF of the misaligned gain G(epsilon), including the atom at 0.
double gain_cdf(const AntennaPattern& pattern, const AlignmentErrorModel& model, double g);

/// Continuous density of the misaligned gain on the open support. The atom at
/// g = 0 is not included; see zero_gain_mass. Throws DomainError outside the
/// support and for PerfectAlignment, which has no continuous part.
double gain_pdf(const AntennaPattern& pattern, const AlignmentErrorModel& model, double g);

}  // namespace mmd2d
