#include "mmd2d/antenna.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "mmd2d/errors.hpp"

namespace mmd2d {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string format_angle(double radians) {
  char buf[64];
  const double in_pi = radians / kPi;
  const double rounded = std::round(in_pi * 1e6) / 1e6;
  if (std::abs(in_pi - rounded) < 1e-12) {
    std::snprintf(buf, sizeof buf, "%gpi", rounded);
  } else {
    std::snprintf(buf, sizeof buf, "%.9g", radians);
  }
  return buf;
}

// Normalizer of the truncated Gaussian: P[|N(0, s2)| <= eps0].
double truncation_mass(const TruncatedGaussianError& m) {
  return std::erf(m.eps0 / std::sqrt(2.0 * m.s2));
}

}  // namespace

double AntennaPattern::half_lobe() const { return kPi / tau; }

void AntennaPattern::validate() const {
  if (!(g_m > 0.0) || !std::isfinite(g_m)) throw ValidationError("antenna: g_m must be > 0");
  if (!(tau >= 1.0) || !std::isfinite(tau)) throw ValidationError("antenna: tau must be >= 1");
}

void validate(const AlignmentErrorModel& model) {
  std::visit(Overloaded{
                 [](const PerfectAlignment&) {},
                 [](const UniformError& m) {
                   if (!(m.eps0 > 0.0 && m.eps0 < kPi)) {
                     throw ValidationError("uniform error: eps0 must lie in (0, pi)");
                   }
                 },
                 [](const TruncatedGaussianError& m) {
                   if (!(m.s2 > 0.0) || !std::isfinite(m.s2)) {
                     throw ValidationError("gaussian error: s2 must be > 0");
                   }
                   if (!(m.eps0 > 0.0 && m.eps0 < kPi)) {
                     throw ValidationError("gaussian error: eps0 must lie in (0, pi)");
                   }
                 },
             },
             model);
}

std::string describe(const AlignmentErrorModel& model) {
  return std::visit(Overloaded{
                        [](const PerfectAlignment&) { return std::string("perfect"); },
                        [](const UniformError& m) {
                          return "uniform:eps0=" + format_angle(m.eps0);
                        },
                        [](const TruncatedGaussianError& m) {
                          char buf[32];
                          std::snprintf(buf, sizeof buf, "%g", m.s2);
                          return "gaussian:s2=" + std::string(buf) +
                                 ":eps0=" + format_angle(m.eps0);
                        },
                    },
                    model);
}

double wrap_angle(double theta) {
  double wrapped = std::remainder(theta, 2.0 * kPi);
  if (wrapped <= -kPi) wrapped += 2.0 * kPi;
  return wrapped;
}

double gain(const AntennaPattern& pattern, double theta) {
  const double t = std::abs(wrap_angle(theta));
  if (t >= pattern.half_lobe()) return 0.0;
  const double c = std::cos(0.5 * pattern.tau * t);
  return pattern.g_m * c * c;
}

double sample_error(const AlignmentErrorModel& model, RandomStream& rng) {
  return std::visit(Overloaded{
                        [](const PerfectAlignment&) { return 0.0; },
                        [&rng](const UniformError& m) { return rng.uniform(-m.eps0, m.eps0); },
                        [&rng](const TruncatedGaussianError& m) {
                          // Rejection from the untruncated normal.
                          const double s = std::sqrt(m.s2);
                          for (;;) {
                            const double e = s * rng.standard_normal();
                            if (std::abs(e) <= m.eps0) return e;
                          }
                        },
                    },
                    model);
}

double error_density(const AlignmentErrorModel& model, double eps) {
  return std::visit(Overloaded{
                        [](const PerfectAlignment&) { return 0.0; },
                        [eps](const UniformError& m) {
                          return std::abs(eps) <= m.eps0 ? 0.5 / m.eps0 : 0.0;
                        },
                        [eps](const TruncatedGaussianError& m) {
                          if (std::abs(eps) > m.eps0) return 0.0;
                          return std::exp(-eps * eps / (2.0 * m.s2)) /
                                 (std::sqrt(2.0 * kPi * m.s2) * truncation_mass(m));
                        },
                    },
                    model);
}

double error_bound(const AlignmentErrorModel& model) {
  return std::visit(Overloaded{
                        [](const PerfectAlignment&) { return 0.0; },
                        [](const UniformError& m) { return m.eps0; },
                        [](const TruncatedGaussianError& m) { return m.eps0; },
                    },
                    model);
}

double zero_gain_mass(const AntennaPattern& pattern, const AlignmentErrorModel& model) {
  const double edge = pattern.half_lobe();
  return std::visit(Overloaded{
                        [](const PerfectAlignment&) { return 0.0; },
                        [edge](const UniformError& m) { return std::max(0.0, 1.0 - edge / m.eps0); },
                        [edge](const TruncatedGaussianError& m) {
                          if (m.eps0 <= edge) return 0.0;
                          return 1.0 - std::erf(edge / std::sqrt(2.0 * m.s2)) / truncation_mass(m);
                        },
                    },
                    model);
}

std::pair<double, double> continuous_support(const AntennaPattern& pattern,
                                             const AlignmentErrorModel& model) {
  const double eps0 = error_bound(model);
  if (eps0 < pattern.half_lobe()) {
    const double c = std::cos(0.5 * pattern.tau * eps0);
    return {pattern.g_m * c * c, pattern.g_m};
  }
  return {0.0, pattern.g_m};
}

double gain_cdf(const AntennaPattern& pattern, const AlignmentErrorModel& model, double g) {
  if (g < 0.0) return 0.0;
  if (g >= pattern.g_m) return 1.0;
  if (std::holds_alternative<PerfectAlignment>(model)) return 0.0;

  const double atom = zero_gain_mass(pattern, model);
  if (g == 0.0) return atom;
  // |epsilon| at which the pattern falls to g.
  const double angle = std::acos(std::sqrt(g / pattern.g_m));
  const double raw = std::visit(
      Overloaded{
          [](const PerfectAlignment&) { return 0.0; },
          [&](const UniformError& m) { return 1.0 - 2.0 / (m.eps0 * pattern.tau) * angle; },
          [&](const TruncatedGaussianError& m) {
            const double sqrt_zeta = std::sqrt(2.0 / (pattern.tau * pattern.tau * m.s2));
            return 1.0 - std::erf(sqrt_zeta * angle) / truncation_mass(m);
          },
      },
      model);
  return std::clamp(raw, atom, 1.0);
}

double gain_pdf(const AntennaPattern& pattern, const AlignmentErrorModel& model, double g) {
  if (std::holds_alternative<PerfectAlignment>(model)) {
    throw DomainError("gain_pdf: perfect alignment has no continuous gain density");
  }
  const auto [lo, hi] = continuous_support(pattern, model);
  if (!(g > lo && g < hi)) throw DomainError("gain_pdf: g outside the continuous support");
  const double root = std::sqrt(g) * std::sqrt(pattern.g_m - g);
  return std::visit(
      Overloaded{
          [](const PerfectAlignment&) { return 0.0; },
          [&](const UniformError& m) { return 1.0 / (pattern.tau * m.eps0 * root); },
          [&](const TruncatedGaussianError& m) {
            const double zeta = 2.0 / (pattern.tau * pattern.tau * m.s2);
            const double angle = std::acos(std::sqrt(g / pattern.g_m));
            return std::sqrt(zeta) * std::exp(-zeta * angle * angle) /
                   (truncation_mass(m) * std::sqrt(kPi) * root);
          },
      },
      model);
}

}  // namespace mmd2d
