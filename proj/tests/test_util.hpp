#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

namespace testutil {

inline double rel_diff(double a, double b) {
  const double d = std::fabs(a - b);
  if (d == 0.0) return 0.0;
  return d / std::max(std::fabs(a), std::fabs(b));
}

inline double rel_diff(std::complex<double> a, std::complex<double> b) {
  const double d = std::abs(a - b);
  if (d == 0.0) return 0.0;
  return d / std::max(std::abs(a), std::abs(b));
}

// E{(mu + sigma Z)^n} for standard normal Z, by binomial expansion.
inline double binomial_raw_moment(double mu, double sigma, int n) {
  double sum = 0.0;
  double choose = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k % 2 == 0) {
      double z_moment = 1.0;
      for (int i = k - 1; i > 1; i -= 2) z_moment *= i;
      sum += choose * std::pow(mu, n - k) * std::pow(sigma, k) * z_moment;
    }
    choose = choose * (n - k) / (k + 1);
  }
  return sum;
}

}  // namespace testutil
