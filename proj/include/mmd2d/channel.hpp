#pragma once

#include <span>

#include "mmd2d/antenna.hpp"
#include "mmd2d/geometry.hpp"
#include "mmd2d/random.hpp"

namespace mmd2d {

/// Transmit power, path-loss law C*d^-alpha and receiver noise, all linear.
struct LinkBudget {
  double p_d_w = 1.0;
  double c_intercept = 6.309573444801929e-07;  // -62 dB
  double alpha = 2.1;
  double sigma2_w = 3.981071705534969e-11;     // -74 dBm

  void validate() const;

  /// sigma^2 / (P_D C).
  double normalized_noise() const { return sigma2_w / (p_d_w * c_intercept); }
};

/// Interferers closer than this are evaluated at this distance.
inline constexpr double kDefaultMinDistance = 1.0;

/// Thermal noise -174 dBm/Hz over `bandwidth_hz` plus the receiver noise figure.
double noise_power_dbm(double bandwidth_hz, double noise_figure_db);

/// C * d^-alpha. Throws DomainError for d <= 0.
double path_loss(double d, const LinkBudget& budget);

/// Rayleigh fading power gain, Exp(1).
double sample_fading(RandomStream& rng);

struct Interferer {
  Point2D position;
  /// Absolute bore-sight direction of the interferer's antenna.
  double boresight = 0.0;
  double fading = 1.0;
};

/// Sum of P_D * h_i * G(beta_i) * C * |x_i - receiver|^-alpha, where beta_i
/// is the angle between the interferer's bore-sight and its bearing to the
/// receiver.
double aggregate_interference(std::span<const Interferer> interferers, Point2D receiver,
                              const AntennaPattern& pattern, const LinkBudget& budget,
                              double min_distance = kDefaultMinDistance);

/// P_D h0 g0 C d0^-alpha / (sigma^2 + I). Exactly 0 when signal_gain is 0.
double sinr(double signal_gain, double fading, double d0, double interference,
            const LinkBudget& budget);

}  // namespace mmd2d
