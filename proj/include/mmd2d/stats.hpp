#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace mmd2d::stats {

/// Step CDF of a sample.
class EmpiricalCdf {
 public:
  EmpiricalCdf() = default;
  explicit EmpiricalCdf(std::vector<double> samples);

  /// Fraction of samples <= x.
  double operator()(double x) const;
  /// Fraction of samples < x.
  double left_limit(double x) const;

  std::size_t size() const { return sorted_.size(); }
  std::span<const double> sorted() const { return sorted_; }
  double mean() const;

 private:
  std::vector<double> sorted_;
};

/// sup_x |F_n(x) - F(x)|. `cdf` must be right-continuous; atoms are handled by
/// also comparing left limits at each sample point.
double ks_statistic(const EmpiricalCdf& empirical, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov statistic sup_x |F_a(x) - F_b(x)|.
double ks_two_sample(const EmpiricalCdf& a, const EmpiricalCdf& b);

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

/// Wilson score interval for a binomial proportion; z = 1.96 gives 95%.
Interval wilson_interval(std::size_t successes, std::size_t trials,
                         double z = 1.959963984540054);

}  // namespace mmd2d::stats
