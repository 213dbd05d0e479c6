#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

namespace robin {

struct ScalarMinimum {
  double x;
  double value;
};

// Golden-section minimization on [a, b]; unimodality is assumed on the
// bracket and the usual contraction is applied otherwise. Terminates when
// the bracket width drops below x_tol.
template <class F>
ScalarMinimum golden_section_min(F&& f, double a, double b, double x_tol = 1e-10,
                                 int max_iter = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < max_iter && (b - a) > x_tol; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double xm = 0.5 * (a + b);
  return ScalarMinimum{xm, f(xm)};
}

struct NelderMeadOptions {
  double initial_step = 0.1;
  double x_tol = 1e-9;
  double f_tol = 1e-13;
  int max_iter = 2000;
};

struct VectorMinimum {
  std::vector<double> x;
  double value;
};

// Standard Nelder-Mead simplex minimization (reflection 1, expansion 2,
// contraction 1/2, shrink 1/2).
inline VectorMinimum nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                 const std::vector<double>& x0,
                                 const NelderMeadOptions& opts = {}) {
  const std::size_t n = x0.size();
  if (n == 0) return VectorMinimum{x0, f(x0)};

  std::vector<std::vector<double>> simplex(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += opts.initial_step;
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i <= n; ++i) fv[i] = f(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order[0], worst = order[n], second = order[n - 1];

    double spread = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      spread = std::max(spread, std::abs(simplex[worst][i] - simplex[best][i]));
    if (spread < opts.x_tol && std::abs(fv[worst] - fv[best]) < opts.f_tol) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    auto blend = [&](double t) {
      std::vector<double> p(n);
      for (std::size_t j = 0; j < n; ++j)
        p[j] = centroid[j] + t * (centroid[j] - simplex[worst][j]);
      return p;
    };

    std::vector<double> reflected = blend(1.0);
    const double fr = f(reflected);
    if (fr < fv[best]) {
      std::vector<double> expanded = blend(2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        simplex[worst] = std::move(expanded);
        fv[worst] = fe;
      } else {
        simplex[worst] = std::move(reflected);
        fv[worst] = fr;
      }
    } else if (fr < fv[second]) {
      simplex[worst] = std::move(reflected);
      fv[worst] = fr;
    } else {
      std::vector<double> contracted = blend(fr < fv[worst] ? 0.5 : -0.5);
      const double fc = f(contracted);
      if (fc < std::min(fr, fv[worst])) {
        simplex[worst] = std::move(contracted);
        fv[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (std::size_t j = 0; j < n; ++j)
            simplex[i][j] = 0.5 * (simplex[i][j] + simplex[best][j]);
          fv[i] = f(simplex[i]);
        }
      }
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= n; ++i)
    if (fv[i] < fv[best]) best = i;
  return VectorMinimum{simplex[best], fv[best]};
}

}  // namespace robin
