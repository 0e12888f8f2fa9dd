#include "mmd2d/channel.hpp"

#include <algorithm>
#include <cmath>

#include "mmd2d/errors.hpp"

namespace mmd2d {

void LinkBudget::validate() const {
  if (!(p_d_w > 0.0)) throw ValidationError("link budget: transmit power must be > 0");
  if (!(c_intercept > 0.0)) throw ValidationError("link budget: path-loss intercept must be > 0");
  if (!(alpha > 0.0)) throw ValidationError("link budget: path-loss exponent must be > 0");
  if (!(sigma2_w > 0.0)) throw ValidationError("link budget: noise power must be > 0");
}

double noise_power_dbm(double bandwidth_hz, double noise_figure_db) {
  if (!(bandwidth_hz > 0.0)) throw DomainError("noise_power_dbm: bandwidth must be > 0");
  return -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

double path_loss(double d, const LinkBudget& budget) {
  if (!(d > 0.0)) throw DomainError("path_loss: distance must be > 0");
  return budget.c_intercept * std::pow(d, -budget.alpha);
}

double sample_fading(RandomStream& rng) { return rng.exponential(); }

double aggregate_interference(std::span<const Interferer> interferers, Point2D receiver,
                              const AntennaPattern& pattern, const LinkBudget& budget,
                              double min_distance) {
  double total = 0.0;
  for (const auto& i : interferers) {
    const double bearing_to_rx =
        std::atan2(receiver.y - i.position.y, receiver.x - i.position.x);
    const double g = gain(pattern, i.boresight - bearing_to_rx);
    if (g == 0.0) continue;
    const double d = std::max(distance(i.position, receiver), min_distance);
    total += budget.p_d_w * i.fading * g * path_loss(d, budget);
  }
  return total;
}

double sinr(double signal_gain, double fading, double d0, double interference,
            const LinkBudget& budget) {
  if (signal_gain == 0.0) return 0.0;
  const double signal = budget.p_d_w * fading * signal_gain * path_loss(d0, budget);
  return signal / (budget.sigma2_w + interference);
}

}  // namespace mmd2d
