#include "nilm/special_functions.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "nilm/error.hpp"

namespace nilm::stats {
namespace {

constexpr int kMaxIterations = 100000;
constexpr double kEpsilon = 1e-16;
constexpr double kTiny = 1e-300;

/// Continued fraction for I_x(a, b) (modified Lentz), given y = 1 - x.
double beta_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) return h;
  }
  throw Error("incomplete beta continued fraction did not converge");
}

/// I_x(a, b) with the complement y = 1 - x supplied separately, so callers
/// that know y exactly do not lose precision near x = 1.
double beta_xy(double x, double y, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw ArgumentError("incomplete beta needs a, b > 0");
  if (x < 0.0 || y < 0.0) throw ArgumentError("incomplete beta needs x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (y == 0.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log(y);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_fraction(a, b, x) / a;
  return 1.0 - front * beta_fraction(b, a, y) / b;
}

double gamma_series(double a, double x) {
  double sum = 1.0 / a;
  double term = sum;
  double ap = a;
  for (int n = 0; n < kMaxIterations; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEpsilon)
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  throw Error("incomplete gamma series did not converge");
}

double gamma_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon)
      return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
  }
  throw Error("incomplete gamma continued fraction did not converge");
}

}  // namespace

double regularized_beta(double x, double a, double b) {
  if (x < 0.0 || x > 1.0) throw ArgumentError("incomplete beta needs x in [0, 1]");
  return beta_xy(x, 1.0 - x, a, b);
}

double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw ArgumentError("incomplete gamma needs a > 0, x >= 0");
  if (x == 0.0) return 0.0;
  return x < a + 1.0 ? gamma_series(a, x) : 1.0 - gamma_fraction(a, x);
}

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw ArgumentError("incomplete gamma needs a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  return x < a + 1.0 ? 1.0 - gamma_series(a, x) : gamma_fraction(a, x);
}

double student_t_two_tailed(double t, double df) {
  if (!(df > 0.0)) throw ArgumentError("degrees of freedom must be positive");
  if (std::isnan(t)) throw ArgumentError("t is NaN");
  if (std::isinf(t)) return 0.0;
  const double t2 = t * t;
  // P(|T| >= |t|) = I_{df/(df+t^2)}(df/2, 1/2).
  return beta_xy(df / (df + t2), t2 / (df + t2), 0.5 * df, 0.5);
}

double student_t_cdf(double t, double df) {
  const double tail = 0.5 * student_t_two_tailed(t, df);
  return t > 0.0 ? 1.0 - tail : tail;
}

double chi_square_sf(double x, double df) {
  if (!(df > 0.0)) throw ArgumentError("degrees of freedom must be positive");
  if (x <= 0.0) return 1.0;
  return regularized_gamma_q(0.5 * df, 0.5 * x);
}

ChiSquareResult chi_square_uniform(std::span<const std::uint64_t> observed) {
  if (observed.size() < 2) throw ArgumentError("chi-square needs at least two categories");
  double total = 0.0;
  for (auto o : observed) total += static_cast<double>(o);
  const std::vector<double> expected(observed.size(), total / static_cast<double>(observed.size()));
  return chi_square(observed, expected);
}

ChiSquareResult chi_square(std::span<const std::uint64_t> observed,
                           std::span<const double> expected) {
  if (observed.size() != expected.size() || observed.size() < 2)
    throw ArgumentError("chi-square needs matching observed/expected with >= 2 categories");
  ChiSquareResult r;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(expected[i] > 0.0)) throw ArgumentError("chi-square expected counts must be positive");
    const double diff = static_cast<double>(observed[i]) - expected[i];
    r.statistic += diff * diff / expected[i];
  }
  r.df = static_cast<double>(observed.size() - 1);
  r.p_value = chi_square_sf(r.statistic, r.df);
  return r;
}

double mean(std::span<const double> values) {
  if (values.empty()) throw ArgumentError("mean of an empty series");
  double sum = 0.0;
  for (auto v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double sample_stddev(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double m = mean(values);
  double ss = 0.0;
  for (auto v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ArgumentError("least squares needs >= 2 points");
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw ArgumentError("least squares with constant x");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

}  // namespace nilm::stats
