#pragma once

#include <cmath>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

namespace ref {

/// Textbook paired t statistic in long double, two-pass.
struct Textbook {
  long double t;
  long double p;
};

inline Textbook textbook_ttest(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  long double mean = 0;
  for (std::size_t i = 0; i < n; ++i) mean += static_cast<long double>(a[i]) - b[i];
  mean /= n;
  long double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const long double d = static_cast<long double>(a[i]) - b[i] - mean;
    ss += d * d;
  }
  const long double sd = std::sqrt(ss / (n - 1));
  const long double t = mean / (sd / std::sqrt(static_cast<long double>(n)));
  boost::math::students_t_distribution<long double> dist(static_cast<long double>(n - 1));
  const long double p = 2 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
  return {t, p};
}

inline double rel_err(double x, long double ref) {
  if (ref == 0) return std::fabs(x);
  return static_cast<double>(std::fabs((x - ref) / ref));
}

}  // namespace ref
