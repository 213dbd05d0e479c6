#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace robin {

namespace detail {

// erf(x) by the all-positive-terms series
//   erf(x) = (2x/sqrt(pi)) e^{-x^2} sum_{n>=0} (2x^2)^n / (1*3*...*(2n+1)),
// free of cancellation; used below the continued-fraction crossover.
inline double erf_series(double x) {
  const double x2 = x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int n = 1; n < 200; ++n) {
    term *= 2.0 * x2 / (2.0 * static_cast<double>(n) + 1.0);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return 2.0 * x / std::sqrt(std::numbers::pi) * std::exp(-x2) * sum;
}

// Scaled complement e^{x^2} erfc(x) by the Laplace continued fraction
//   erfcx(x) = (1/sqrt(pi)) / (x + (1/2)/(x + (2/2)/(x + (3/2)/(x + ...)))),
// evaluated with the modified Lentz algorithm. Reliable for x >= ~1.5.
inline double erfcx_cf(double x) {
  const double tiny = 1e-300;
  double f = x != 0.0 ? x : tiny;
  double c = f;
  double d = 0.0;
  for (int n = 1; n < 500; ++n) {
    const double a = 0.5 * static_cast<double>(n);
    d = x + a * d;
    if (d == 0.0) d = tiny;
    c = x + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double ratio = c * d;
    f *= ratio;
    if (std::abs(ratio - 1.0) < 1e-17) break;
  }
  return 1.0 / (std::sqrt(std::numbers::pi) * f);
}

// Below the crossover, erfc goes through the series as 1 - erf and the
// subtraction costs about one ulp of 1; the quotient against erfc(x) stays
// under 1e-14 only while erfc is not too small, which caps the crossover
// near 1.2. Above it the continued fraction is accurate directly.
inline constexpr double erf_cf_crossover = 1.2;

}  // namespace detail

// Scaled complementary error function e^{x^2} erfc(x), x >= 0. Computed
// directly to avoid overflow of the e^{x^2} factor at large x.
inline double erfcx(double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("erfcx requires x >= 0");
  if (x < detail::erf_cf_crossover)
    return std::exp(x * x) * (1.0 - detail::erf_series(x));
  return detail::erfcx_cf(x);
}

// Complementary error function, series below the crossover and continued
// fraction above it.
inline double erfc(double x) {
  if (x < 0.0) return 2.0 - erfc(-x);
  if (x < detail::erf_cf_crossover) return 1.0 - detail::erf_series(x);
  return detail::erfcx_cf(x) * std::exp(-x * x);
}

}  // namespace robin
