#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

#include "robin/interval.hpp"
#include "robin/quadrature.hpp"
#include "robin/riesz.hpp"
#include "robin/special.hpp"

namespace robin {

// Semiclassical constant L^sc_{gamma,d} = Gamma(1+gamma) / ((4 pi)^{d/2} Gamma(1+gamma+d/2)).
inline double lsc(double gamma, int d) {
  if (!(gamma >= 0.0) || d < 0) throw std::invalid_argument("lsc needs gamma >= 0, d >= 0");
  const double log_val = std::lgamma(1.0 + gamma) - std::lgamma(1.0 + gamma + 0.5 * d) -
                         0.5 * d * std::log(4.0 * pi);
  return std::exp(log_val);
}

enum class LForm {
  density,  // L^sc [ (4/pi) int_0^1 (1-s^2)^{gamma+d/2} beta/(beta^2+s^2) ds - 1 ]
  arctan,   // L^sc [ (8/pi)(gamma+d/2) int_0^1 x (1-x^2)^{gamma+d/2-1} arctan(x/beta) dx - 1 ]
};

// Second Weyl-term coefficient L_{gamma,d}(beta): smooth, decreasing in beta,
// with limits +-L^sc at beta -> 0+ / infinity. Both integral representations
// coincide for gamma + d/2 > 0; at gamma + d/2 = 0 only the density form is
// defined and reduces to (4/pi) arctan(1/beta) - 1 in closed form. The
// substitution s = sin(theta) removes the endpoint derivative singularity.
inline double l_const(double gamma, int d, double beta, LForm form = LForm::density,
                      double quad_tol = 1e-13) {
  if (!(gamma >= 0.0) || d < 0) throw std::invalid_argument("l_const needs gamma >= 0, d >= 0");
  detail::check_beta(beta);
  const double a = gamma + 0.5 * d;
  const double scale = lsc(gamma, d);

  if (a == 0.0) {
    if (form == LForm::arctan)
      throw std::invalid_argument("the arctan form of L is undefined at gamma + d/2 = 0");
    return scale * (4.0 / pi * std::atan(1.0 / beta) - 1.0);
  }

  QuadratureResult quad;
  if (form == LForm::density) {
    auto f = [&](double theta) {
      const double s = std::sin(theta);
      const double c = std::cos(theta);
      return std::pow(c * c, a) * beta / (beta * beta + s * s) * c;
    };
    quad = integrate(f, 0.0, 0.5 * pi, quad_tol, 1e-14, 20000);
    if (!quad.converged)
      throw convergence_error("quadrature for L (density form) failed", 0.0, 0.5 * pi);
    return scale * (4.0 / pi * quad.value - 1.0);
  }

  auto f = [&](double theta) {
    const double x = std::sin(theta);
    const double c = std::cos(theta);
    return x * std::pow(c * c, a - 1.0) * std::atan(x / beta) * c;
  };
  quad = integrate(f, 0.0, 0.5 * pi, quad_tol, 1e-14, 20000);
  if (!quad.converged)
    throw convergence_error("quadrature for L (arctan form) failed", 0.0, 0.5 * pi);
  return scale * (8.0 / pi * a * quad.value - 1.0);
}

// A computed threshold together with the bracket that certified it.
struct ThresholdResult {
  double value;
  Bracket bracket;
  std::optional<double> attaining;  // k or lambda at which the extremum is achieved
  double tolerance;
};

// Unique zero beta_W(gamma, d) of the strictly decreasing beta -> L_{gamma,d}(beta).
// Depends on (gamma, d) only through gamma + d/2.
inline ThresholdResult beta_w(double gamma, int d, double tol = 1e-10) {
  double lo = 1e-6, hi = 1e6;
  auto value = [&](double b) { return l_const(gamma, d, b); };
  double flo = value(lo), fhi = value(hi);
  int expansions = 0;
  while (flo <= 0.0 && expansions++ < 6) flo = value(lo /= 100.0);
  while (fhi >= 0.0 && expansions++ < 12) fhi = value(hi *= 100.0);
  if (flo <= 0.0 || fhi >= 0.0)
    throw convergence_error("could not bracket the zero of L", lo, hi);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (value(mid) > 0.0 ? lo : hi) = mid;
  }
  return ThresholdResult{0.5 * (lo + hi), Bracket{lo, hi}, std::nullopt, tol};
}

// Unique root of 2 e^{x^2} erfc(x) = 1, the large-gamma limit of
// beta_W(gamma, 0) sqrt(gamma).
inline double c_star(double tol = 1e-12) {
  auto h = [](double x) { return 2.0 * erfcx(x) - 1.0; };
  double lo = 0.5, hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (h(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Two-term Weyl evaluation of a Riesz mean: leading bulk term, boundary
// correction, and the remainder normalized by the expansion's error scale.
struct WeylExpansion {
  double value;      // computed Riesz mean
  double leading;    // L^sc_{gamma,d} |R| lambda^{gamma+d/2}
  double second;     // (1/4) L_{gamma,d-1} H^{d-1}(dR) lambda^{gamma+(d-1)/2}; 0 when gamma = 0
  double remainder;  // value - leading - second
  double normalized_remainder;
};

namespace detail {

inline double second_term_coefficient(double gamma, int d, const BoundaryCondition& bc,
                                      double beta_over_root) {
  switch (bc.kind()) {
    case BCKind::Neumann: return lsc(gamma, d - 1);
    case BCKind::Dirichlet: return -lsc(gamma, d - 1);
    case BCKind::Robin:
    default: return l_const(gamma, d - 1, beta_over_root);
  }
}

}  // namespace detail

// Evaluates the Riesz mean of q and splits it against the two-term expansion.
// With `coupled` set, a Robin parameter beta in q is taken relative to the
// spectral scale: the operator uses beta sqrt(lambda) and the second-term
// coefficient is L_{gamma,d-1}(beta); otherwise the operator uses beta as is
// and the coefficient argument is beta / sqrt(lambda).
inline WeylExpansion two_term_prediction(const SpectralQuery& q, bool coupled = false,
                                         const RieszOptions& options = {}) {
  if (!(q.lambda > 0.0))
    throw std::invalid_argument("two_term_prediction needs lambda > 0");
  const int d = q.geometry.dimension();
  const double root = std::sqrt(q.lambda);

  BoundaryCondition bc = q.bc;
  double beta_arg = 0.0;
  if (bc.is_robin()) {
    beta_arg = coupled ? bc.beta() : bc.beta() / root;
    if (coupled) bc = BoundaryCondition::robin(bc.beta() * root);
  }

  const SpectralQuery actual(q.gamma, q.lambda, bc, q.geometry);
  WeylExpansion w{};
  w.value = riesz_mean_cuboid(actual, options).value;
  w.leading = lsc(q.gamma, d) * q.geometry.volume() * std::pow(q.lambda, q.gamma + 0.5 * d);
  w.second = q.gamma == 0.0
                 ? 0.0
                 : 0.25 * detail::second_term_coefficient(q.gamma, d, q.bc, beta_arg) *
                       q.geometry.surface() * std::pow(q.lambda, q.gamma + 0.5 * (d - 1));
  w.remainder = w.value - w.leading - w.second;

  const double m = q.geometry.min_side() * root;
  double scale;
  if (d == 1) {
    const double kappa = std::min(q.gamma, 1.0);
    scale = std::pow(q.lambda, q.gamma - 0.5 * kappa);
  } else if (q.gamma > 0.0) {
    const double kappa = std::min(q.gamma / (1.0 + q.gamma), 1.0 / d);
    scale = q.geometry.surface() * std::pow(q.lambda, q.gamma + 0.5 * (d - 1)) *
            (std::pow(m, -kappa) + std::pow(m, 1.0 - d));
  } else {
    scale = q.geometry.surface() * std::pow(q.lambda, 0.5 * (d - 1)) *
            (1.0 + std::pow(m, 1.0 - d));
  }
  w.normalized_remainder = w.remainder / scale;
  return w;
}

}  // namespace robin
