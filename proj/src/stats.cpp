#include "mmd2d/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mmd2d::stats {

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
  if (sorted_.empty()) return 0.0;
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::left_limit(double x) const {
  if (sorted_.empty()) return 0.0;
  const auto it = std::lower_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::mean() const {
  if (sorted_.empty()) return 0.0;
  return std::accumulate(sorted_.begin(), sorted_.end(), 0.0) /
         static_cast<double>(sorted_.size());
}

double ks_statistic(const EmpiricalCdf& empirical, const std::function<double(double)>& cdf) {
  const auto xs = empirical.sorted();
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < xs.size()) {
    std::size_t j = i;
    while (j < xs.size() && xs[j] == xs[i]) ++j;
    const double x = xs[i];
    const double below = static_cast<double>(i) / n;
    const double at = static_cast<double>(j) / n;
    const double f_left = cdf(std::nextafter(x, -std::numeric_limits<double>::infinity()));
    d = std::max({d, std::abs(at - cdf(x)), std::abs(below - f_left)});
    i = j;
  }
  return d;
}

double ks_two_sample(const EmpiricalCdf& a, const EmpiricalCdf& b) {
  const auto xa = a.sorted();
  const auto xb = b.sorted();
  const double na = static_cast<double>(xa.size());
  const double nb = static_cast<double>(xb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < xa.size() || j < xb.size()) {
    double x;
    if (j >= xb.size() || (i < xa.size() && xa[i] <= xb[j])) {
      x = xa[i];
    } else {
      x = xb[j];
    }
    while (i < xa.size() && xa[i] <= x) ++i;
    while (j < xb.size() && xb[j] <= x) ++j;
    const double fa = na > 0 ? static_cast<double>(i) / na : 0.0;
    const double fb = nb > 0 ? static_cast<double>(j) / nb : 0.0;
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // The bounds are exactly 0 / 1 at the extremes; rounding would leave a residue.
  const double low = successes == 0 ? 0.0 : std::max(0.0, center - half);
  const double high = successes == trials ? 1.0 : std::min(1.0, center + half);
  return {low, high};
}

}  // namespace mmd2d::stats
