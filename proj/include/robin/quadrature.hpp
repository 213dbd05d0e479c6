#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "robin/errors.hpp"

namespace robin {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels = 0;
  bool converged = false;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
inline constexpr std::array<double, 8> gk15_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};

inline constexpr std::array<double, 8> gk15_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> gauss7_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
void gk15_panel(F&& f, double a, double b, double& value, double& error) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * gk15_nodes[static_cast<std::size_t>(i)]);
    fv[14 - i] = f(c + h * gk15_nodes[static_cast<std::size_t>(i)]);
  }
  fv[7] = f(c);

  double kronrod = gk15_weights[7] * fv[7];
  for (int i = 0; i < 7; ++i)
    kronrod += gk15_weights[static_cast<std::size_t>(i)] * (fv[i] + fv[14 - i]);

  // Gauss nodes sit at the odd Kronrod indices 1,3,5 plus the center.
  double gauss = gauss7_weights[3] * fv[7];
  for (int i = 0; i < 3; ++i)
    gauss += gauss7_weights[static_cast<std::size_t>(i)] * (fv[2 * i + 1] + fv[13 - 2 * i]);

  value = kronrod * h;
  const double diff = std::abs(kronrod - gauss) * std::abs(h);
  // QUADPACK-style sharpened estimate: the raw |K - G| is pessimistic.
  error = diff;
  if (diff > 0.0) {
    const double scaled = std::pow(200.0 * diff, 1.5);
    if (scaled < diff) error = scaled;
  }
}

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration of f over [a, b]. Stops when
// the summed error estimate drops below max(abs_tol, rel_tol * |integral|).
template <class F>
QuadratureResult integrate(F&& f, double a, double b, double abs_tol = 1e-12,
                           double rel_tol = 1e-12, int max_panels = 4000) {
  QuadratureResult res;
  if (a == b) {
    res.converged = true;
    return res;
  }

  std::priority_queue<detail::Panel> queue;
  detail::Panel p{a, b, 0.0, 0.0};
  detail::gk15_panel(f, a, b, p.value, p.error);
  queue.push(p);
  double total = p.value;
  double total_err = p.error;
  int panels = 1;

  while (total_err > std::max(abs_tol, rel_tol * std::abs(total)) && panels < max_panels) {
    detail::Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {  // interval at machine resolution
      queue.push(detail::Panel{worst.a, worst.b, worst.value, 0.0});
      continue;
    }
    detail::Panel left{worst.a, mid, 0.0, 0.0}, right{mid, worst.b, 0.0, 0.0};
    detail::gk15_panel(f, left.a, left.b, left.value, left.error);
    detail::gk15_panel(f, right.a, right.b, right.value, right.error);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++panels;
  }

  res.value = total;
  res.error_estimate = total_err;
  res.panels = panels;
  res.converged = total_err <= std::max(abs_tol, rel_tol * std::abs(total));
  return res;
}

// Integrates over [a, b] split at the given interior breakpoints (kinks of
// the integrand); each subinterval is handled by the adaptive rule.
template <class F>
QuadratureResult integrate_with_breakpoints(F&& f, double a, double b,
                                            const std::vector<double>& breakpoints,
                                            double abs_tol = 1e-12, double rel_tol = 1e-12,
                                            int max_panels_per_piece = 4000) {
  std::vector<double> pts;
  pts.push_back(a);
  for (double x : breakpoints)
    if (x > a && x < b) pts.push_back(x);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());

  QuadratureResult total;
  total.converged = true;
  const double piece_abs = abs_tol / static_cast<double>(pts.size());
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    QuadratureResult piece =
        integrate(f, pts[i], pts[i + 1], piece_abs, rel_tol, max_panels_per_piece);
    total.value += piece.value;
    total.error_estimate += piece.error_estimate;
    total.panels += piece.panels;
    total.converged = total.converged && piece.converged;
  }
  return total;
}

}  // namespace robin
