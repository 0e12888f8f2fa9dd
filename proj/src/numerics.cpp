#include "mmd2d/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

#include "mmd2d/errors.hpp"

namespace mmd2d::numerics {

namespace {

bool is_non_positive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

constexpr std::size_t kSeriesIterationCap = 20'000'000;
constexpr double kSeriesRelTol = 1e-15;

std::string describe_2f1(double a, double b, double c, double z) {
  std::ostringstream os;
  os.precision(17);
  os << "2F1(" << a << ", " << b << "; " << c << "; " << z << ")";
  return os.str();
}

}  // namespace

double gamma(double x) {
  if (std::isnan(x)) throw DomainError("gamma: NaN argument");
  if (is_non_positive_integer(x)) {
    throw DomainError("gamma: pole at non-positive integer " + std::to_string(x));
  }
  // std::tgamma applies the reflection formula for negative arguments.
  const double value = std::tgamma(x);
  if (std::isinf(value)) throw std::overflow_error("gamma: overflow at x = " + std::to_string(x));
  return value;
}

double reciprocal_gamma(double x) {
  if (is_non_positive_integer(x)) return 0.0;
  const double value = std::tgamma(x);
  if (std::isinf(value)) return 0.0;
  return 1.0 / value;
}

double erf(double x) { return std::erf(x); }

namespace {

// Lower incomplete gamma by its power series; a > 0.
double lower_incomplete_gamma_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < 100000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x));
}

// Modified Lentz evaluation of the continued fraction for Gamma(a, x).
double upper_incomplete_gamma_cf(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) {
      return std::exp(-x + a * std::log(x)) * h;
    }
  }
  throw ConvergenceError("upper_incomplete_gamma: continued fraction did not converge",
                         std::exp(-x + a * std::log(x)) * h);
}

}  // namespace

double upper_incomplete_gamma(double a, double x) {
  if (std::isnan(a) || std::isnan(x) || x < 0.0) {
    throw DomainError("upper_incomplete_gamma: requires x >= 0");
  }
  if (x == 0.0) {
    if (a <= 0.0) throw DomainError("upper_incomplete_gamma: diverges at x = 0 for a <= 0");
    return gamma(a);
  }
  if (x >= 1.0 && x >= a + 1.0) return upper_incomplete_gamma_cf(a, x);
  if (a > 0.0) return gamma(a) - lower_incomplete_gamma_series(a, x);

  // a <= 0 and x < 1: Gamma(a, x) = (Gamma(a+1, x) - x^a e^-x) / a.
  if (a == std::floor(a)) {
    throw DomainError("upper_incomplete_gamma: integer a <= 0 with x < 1 is unsupported");
  }
  return (upper_incomplete_gamma(a + 1.0, x) - std::exp(a * std::log(x) - x)) / a;
}

namespace detail {

double hyp2f1_series(double a, double b, double c, double z) {
  double term = 1.0;
  double sum = 1.0;
  for (std::size_t k = 0; k < kSeriesIterationCap; ++k) {
    const double kd = static_cast<double>(k);
    term *= (a + kd) * (b + kd) / ((c + kd) * (kd + 1.0)) * z;
    sum += term;
    if (term == 0.0 || std::abs(term) < kSeriesRelTol * std::abs(sum)) return sum;
  }
  throw ConvergenceError("gauss_2f1: series iteration cap hit for " + describe_2f1(a, b, c, z),
                         sum);
}

double hyp2f1_pfaff(double a, double b, double c, double z) {
  const double w = z / (z - 1.0);
  return std::pow(1.0 - z, -b) * hyp2f1_series(c - a, b, c, w);
}

double hyp2f1_reciprocal(double a, double b, double c, double z) {
  const double inv = 1.0 / z;
  const double mz = -z;
  const double gc = gamma(c);
  const double first_coeff =
      gc * gamma(b - a) * reciprocal_gamma(b) * reciprocal_gamma(c - a);
  const double second_coeff =
      gc * gamma(a - b) * reciprocal_gamma(a) * reciprocal_gamma(c - b);
  double value = 0.0;
  if (first_coeff != 0.0) {
    value += first_coeff * std::pow(mz, -a) * hyp2f1_series(a, a - c + 1.0, a - b + 1.0, inv);
  }
  if (second_coeff != 0.0) {
    value += second_coeff * std::pow(mz, -b) * hyp2f1_series(b, b - c + 1.0, b - a + 1.0, inv);
  }
  return value;
}

}  // namespace detail

double gauss_2f1(double a, double b, double c, double z) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(z)) {
    throw DomainError("gauss_2f1: non-finite argument");
  }
  if (is_non_positive_integer(c)) {
    throw DomainError("gauss_2f1: c is a non-positive integer in " + describe_2f1(a, b, c, z));
  }
  if (z > 0.0) throw DomainError("gauss_2f1: requires z <= 0, got " + describe_2f1(a, b, c, z));
  if (z == 0.0) return 1.0;

  // 2F1(a, b; b; z) = (1 - z)^(-a).
  if (c == b) return std::pow(1.0 - z, -a);
  if (c == a) return std::pow(1.0 - z, -b);
  // Terminating series: a polynomial in z.
  if (is_non_positive_integer(a) || is_non_positive_integer(b)) {
    return detail::hyp2f1_series(a, b, c, z);
  }

  if (z > -0.5) return detail::hyp2f1_series(a, b, c, z);

  const double gap = b - a;
  const bool near_integer_gap = std::abs(gap - std::round(gap)) < 1e-3;
  if (z >= -kReciprocalThreshold || near_integer_gap) return detail::hyp2f1_pfaff(a, b, c, z);
  return detail::hyp2f1_reciprocal(a, b, c, z);
}

namespace {

// Gauss-Kronrod 7/15 abscissae and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod_15(const std::function<double(double)>& g, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double f_center = g(center);
  double kronrod = f_center * kWgk[7];
  double gauss = f_center * kWg[3];
  double abs_sum = std::abs(kronrod);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = g(center - dx);
    f2[j] = g(center + dx);
    const double pair = f1[j] + f2[j];
    kronrod += kWgk[j] * pair;
    abs_sum += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  const double mean = kronrod * 0.5;
  double asc = kWgk[7] * std::abs(f_center - mean);
  for (std::size_t j = 0; j < 7; ++j) {
    asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  const double result = kronrod * half;
  const double resabs = abs_sum * std::abs(half);
  const double resasc = asc * std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * resabs, err);
  }
  return {lo, hi, result, err};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           const QuadratureOptions& options) {
  if (!(lo < hi)) throw DomainError("integrate: requires lo < hi");

  std::size_t evaluations = 0;
  std::function<double(double)> g;
  double u_lo = lo;
  double u_hi = hi;
  if (options.endpoints == Endpoints::sqrt_singular) {
    const double width = hi - lo;
    g = [&f, &evaluations, lo, hi, width](double u) {
      ++evaluations;
      const double s = std::sin(0.5 * std::numbers::pi * u);
      const double c = std::cos(0.5 * std::numbers::pi * u);
      // Evaluate x from the nearer endpoint to keep precision there.
      const double x = u <= 0.5 ? lo + width * s * s : hi - width * c * c;
      const double jacobian = width * std::numbers::pi * s * c;
      if (jacobian == 0.0) return 0.0;
      return f(x) * jacobian;
    };
    u_lo = 0.0;
    u_hi = 1.0;
  } else {
    g = [&f, &evaluations](double x) {
      ++evaluations;
      return f(x);
    };
  }

  std::priority_queue<Panel> panels;
  Panel first = gauss_kronrod_15(g, u_lo, u_hi);
  double total = first.value;
  double total_error = first.error;
  panels.push(first);

  auto target = [&] { return std::max(options.rel_tol * std::abs(total), options.abs_tol); };

  std::size_t subdivisions = 0;
  while (total_error > target()) {
    if (subdivisions >= options.max_subdivisions) {
      throw ConvergenceError("integrate: subdivision cap reached", total);
    }
    Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) {
      throw ConvergenceError("integrate: panel cannot be subdivided further", total);
    }
    Panel left = gauss_kronrod_15(g, worst.lo, mid);
    Panel right = gauss_kronrod_15(g, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++subdivisions;
  }

  // Re-sum to shed accumulated cancellation from the incremental updates.
  double value = 0.0;
  double error = 0.0;
  std::vector<Panel> all;
  all.reserve(panels.size());
  while (!panels.empty()) {
    all.push_back(panels.top());
    panels.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& l, const Panel& r) { return l.lo < r.lo; });
  for (const auto& p : all) {
    value += p.value;
    error += p.error;
  }
  return {value, error, evaluations};
}

}  // namespace mmd2d::numerics
