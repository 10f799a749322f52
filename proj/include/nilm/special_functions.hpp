#pragma once

#include <cstdint>
#include <span>

// Distribution functions and small descriptive statistics.
namespace nilm::stats {

/// Regularized incomplete beta I_x(a, b), a, b > 0, x in [0, 1].
double regularized_beta(double x, double a, double b);

/// Regularized lower and upper incomplete gamma P(a, x), Q(a, x).
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

/// Student's t CDF with `df` degrees of freedom.
double student_t_cdf(double t, double df);
/// P(|T| >= |t|).
double student_t_two_tailed(double t, double df);

/// Upper tail P(X >= x) of chi-square with `df` degrees of freedom.
double chi_square_sf(double x, double df);

struct ChiSquareResult {
  double statistic = 0.0;
  double df = 0.0;
  double p_value = 1.0;
};

/// Goodness of fit of observed counts against equal expected counts.
ChiSquareResult chi_square_uniform(std::span<const std::uint64_t> observed);
/// Goodness of fit against arbitrary expected counts (same length, all > 0).
ChiSquareResult chi_square(std::span<const std::uint64_t> observed,
                           std::span<const double> expected);

double mean(std::span<const double> values);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
double sample_stddev(std::span<const double> values);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

LinearFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace nilm::stats
