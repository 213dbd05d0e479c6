#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "robin/boundary.hpp"
#include "robin/errors.hpp"

namespace robin {

inline constexpr double pi = std::numbers::pi_v<double>;

// Unit-interval Robin parameters below this are flagged as near-degenerate:
// the spectrum is within solver tolerance of the Neumann one.
inline constexpr double degenerate_beta_threshold = 1e-12;

struct Bracket {
  double lo;
  double hi;
  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

struct IntervalEigenvalue {
  long k;
  double lambda;
  double residual;              // |defining fixed-point equation| at the root
  bool degenerate_beta = false; // true when beta fell below the Neumann cutoff
};

namespace detail {

inline void check_index(long k) {
  if (k < 1) throw std::invalid_argument("eigenvalue index must be >= 1, got " + std::to_string(k));
}

inline void check_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("Robin parameter must be finite and > 0");
}

// sqrt(lambda_k) on the unit interval: the unique root of
//   h(s) = s - pi (k-1) - 2 arctan(beta / s) = 0,  s in (pi(k-1), pi k),
// which is the gap fixed point delta = 2 arctan((pi k - delta)/beta) written
// in s = pi k - delta. h is strictly increasing with h' >= 1, so a
// safeguarded Newton iteration inside the arctan bracket converges
// unconditionally. This form is free of subtractive cancellation and of tan
// argument reduction: it stays accurate for k ~ 10^4 and degrades
// continuously into the Neumann (beta -> 0) and Dirichlet (beta -> infinity)
// closed forms at the extremes of the parameter range.
inline double solve_sqrt_lambda(long k, double beta, double* residual_out = nullptr) {
  const double base = pi * static_cast<double>(k - 1);
  auto h = [&](double s) { return s - base - 2.0 * std::atan(beta / s); };
  auto hp = [&](double s) { return 1.0 + 2.0 * beta / (beta * beta + s * s); };

  // Two-sided arctan bounds, in additive form:
  //   pi(k-1) + 2 atan(beta/(pi k)) < s < pi(k-1) + 2 atan(beta/(pi(k-1))),
  // the upper bound being pi k for k = 1.
  double lo = base + 2.0 * std::atan(beta / (pi * static_cast<double>(k)));
  double hi = k == 1 ? pi : base + 2.0 * std::atan(beta / base);
  double x = 0.5 * (lo + hi);

  const int max_iter = 200;
  for (int iter = 0; iter < max_iter; ++iter) {
    const double hx = h(x);
    if (hx == 0.0) break;
    if (hx > 0.0) hi = x; else lo = x;

    double next = x - hx / hp(x);
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);  // bisect fallback
    if (std::abs(next - x) <= 1e-16 * std::max(1.0, x)) {
      x = next;
      break;
    }
    x = next;
    if (hi - lo <= 4e-16 * std::max(1.0, x)) break;
    if (iter == max_iter - 1)
      throw convergence_error("interval eigenvalue solve did not converge (k=" +
                                  std::to_string(k) + ", beta=" + std::to_string(beta) + ")",
                              lo, hi);
  }
  if (residual_out) *residual_out = std::abs(h(x));
  return x;
}

}  // namespace detail

// Closed-form two-sided bounds for the unit-interval Robin eigenvalue:
//   (pi k - 2 atan(pi k/beta))^2 < lambda_k < (pi k - 2 atan(pi(k-1)/beta))^2.
inline Bracket arctan_bracket(long k, double beta) {
  detail::check_index(k);
  detail::check_beta(beta);
  const double pk = pi * static_cast<double>(k);
  const double lo = pk - 2.0 * std::atan(pk / beta);
  const double hi = pk - 2.0 * std::atan(pi * static_cast<double>(k - 1) / beta);
  return Bracket{lo * lo, hi * hi};
}

// delta_k(beta) = pi k - sqrt(lambda_k) in (0, pi), solving
// delta = 2 arctan((pi k - delta)/beta) on the unit interval. Evaluated as
// pi - 2 arctan(beta/s) with s = sqrt(lambda_k), which is the same quantity
// without the pi k - s subtraction and its ulp(pi k) noise.
inline double boundary_gap(long k, double beta) {
  detail::check_index(k);
  detail::check_beta(beta);
  const double s = detail::solve_sqrt_lambda(k, beta);
  return pi - 2.0 * std::atan(beta / s);
}

// d lambda_k / d beta on the unit interval, in closed form:
//   2 (1 + (-1)^{k+1} cos sqrt(lambda)) / (1 + |sin sqrt(lambda)|/sqrt(lambda))
// evaluated through delta_k, where it reads 2(1 - cos delta)/(1 + sin(delta)/sqrt(lambda)).
// Always in [0, 4].
inline double eigenvalue_beta_derivative(long k, double beta) {
  detail::check_index(k);
  detail::check_beta(beta);
  const double root = detail::solve_sqrt_lambda(k, beta);  // sqrt(lambda_k)
  const double delta = pi - 2.0 * std::atan(beta / root);  // pi k - root, noise-free
  return 2.0 * (1.0 - std::cos(delta)) / (1.0 + std::sin(delta) / root);
}

// k-th eigenvalue of -u'' on (0, length) with the given boundary condition.
// Neumann: pi^2 (k-1)^2 / length^2. Dirichlet: pi^2 k^2 / length^2.
// Robin: rescaled unit-interval solve, lambda_k(beta, l) = lambda_k(beta l, 1)/l^2.
inline IntervalEigenvalue solve_interval_eigenvalue(long k, const BoundaryCondition& bc,
                                                    double length) {
  detail::check_index(k);
  if (!(length > 0.0) || !std::isfinite(length))
    throw std::invalid_argument("interval length must be finite and > 0");
  const double inv_l2 = 1.0 / (length * length);
  switch (bc.kind()) {
    case BCKind::Neumann: {
      const double r = pi * static_cast<double>(k - 1);
      return IntervalEigenvalue{k, r * r * inv_l2, 0.0};
    }
    case BCKind::Dirichlet: {
      const double r = pi * static_cast<double>(k);
      return IntervalEigenvalue{k, r * r * inv_l2, 0.0};
    }
    case BCKind::Robin:
    default: {
      // Rescale to the unit interval: lambda_k(beta, l) = lambda_k(beta l, 1) / l^2.
      const double unit_beta = bc.beta() * length;
      double residual = 0.0;
      const double root = detail::solve_sqrt_lambda(k, unit_beta, &residual);
      // The sqrt(lambda) fixed point stays exact down to underflow, so a
      // near-degenerate parameter is still solved; the flag just marks it.
      return IntervalEigenvalue{k, root * root * inv_l2, residual,
                                unit_beta < degenerate_beta_threshold};
    }
  }
}

}  // namespace robin
