#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "robin/minimize.hpp"
#include "robin/parallel.hpp"
#include "robin/riesz.hpp"
#include "robin/semiclassical.hpp"

namespace robin {

// One sample of the coupled-regime Weyl comparison on the unit interval.
// deficit     = lambda^{-gamma} (L^sc_{gamma,1} lambda^{gamma+1/2} - Tr)
// oscillation = lambda^{-gamma/2} (L^sc lambda^{gamma+1/2} + (1/2) L_{gamma,0}(beta) lambda^gamma - Tr)
// where Tr is evaluated with Robin parameter beta sqrt(lambda).
struct DeficitSample {
  double lambda;
  double deficit;
  double oscillation;
};

struct BandThreshold {
  long k;
  double beta_k;
  double worst_lambda;       // minimizer of the deficit over the band
  double deficit_at_worst;
};

struct ThresholdOptions {
  int grid_points = 4096;     // dense scan per band, log spaced
  double beta_tol = 1e-8;     // bisection width for band thresholds
  double refine_rel = 1e-10;  // golden-section width relative to the band
  int jobs = 1;
};

namespace detail {

inline BoundaryCondition coupled_bc(const BoundaryCondition& bc, double lambda) {
  if (!bc.is_robin()) return bc;
  return BoundaryCondition::robin(bc.beta() * std::sqrt(lambda));
}

inline double coupled_trace(double gamma, const BoundaryCondition& bc, double lambda) {
  const SpectralQuery q(gamma, lambda, coupled_bc(bc, lambda), Cuboid::interval(1.0));
  return riesz_mean_interval(q).value;
}

// L_{gamma,0} at the limit matching the boundary condition.
inline double l0_for(double gamma, const BoundaryCondition& bc) {
  switch (bc.kind()) {
    case BCKind::Neumann: return lsc(gamma, 0);
    case BCKind::Dirichlet: return -lsc(gamma, 0);
    case BCKind::Robin:
    default: return l_const(gamma, 0, bc.beta());
  }
}

}  // namespace detail

// Robin parameters are coupled: bc = robin(beta) means the operator carries
// beta sqrt(lambda). gamma = 0 is rejected; the counting-function analogue of
// the bound fails on the interval for every beta.
inline DeficitSample deficit(double gamma, const BoundaryCondition& bc, double lambda) {
  if (!(gamma > 0.0)) throw std::invalid_argument("deficit requires gamma > 0");
  if (!(lambda > 0.0)) throw std::invalid_argument("deficit requires lambda > 0");
  const double trace = detail::coupled_trace(gamma, bc, lambda);
  const double weyl = lsc(gamma, 1) * std::pow(lambda, gamma + 0.5);
  const double second = 0.5 * detail::l0_for(gamma, bc) * std::pow(lambda, gamma);
  return DeficitSample{
      lambda,
      std::pow(lambda, -gamma) * (weyl - trace),
      std::pow(lambda, -0.5 * gamma) * (weyl + second - trace),
  };
}

struct BandMin {
  double worst_lambda;
  double value;
};

// Global minimum of lambda -> deficit over the spectral band
// (pi^2 (k-1)^2, pi^2 k^2]: dense log-spaced scan, then golden-section
// refinement around every local minimum candidate including the endpoints.
inline BandMin band_min_deficit(double gamma, const BoundaryCondition& bc, long k,
                                const ThresholdOptions& opts = {}) {
  if (!(gamma > 0.0)) throw std::invalid_argument("band_min_deficit requires gamma > 0");
  detail::check_index(k);
  const double band_hi = pi * pi * static_cast<double>(k) * static_cast<double>(k);
  const double band_lo = k == 1 ? band_hi * 1e-8
                                : pi * pi * static_cast<double>(k - 1) * static_cast<double>(k - 1);
  const int n = std::max(opts.grid_points, 8);

  std::vector<double> grid(static_cast<std::size_t>(n));
  const double log_lo = std::log(band_lo), log_hi = std::log(band_hi);
  for (int i = 0; i < n; ++i)
    grid[static_cast<std::size_t>(i)] =
        std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(i) / (n - 1));
  grid.back() = band_hi;  // keep the closed right endpoint exact

  std::vector<double> values(grid.size());
  parallel_for(grid.size(), opts.jobs,
               [&](std::size_t i) { values[i] = deficit(gamma, bc, grid[i]).deficit; });

  auto eval = [&](double lambda) { return deficit(gamma, bc, lambda).deficit; };

  BandMin best{grid[0], values[0]};
  const double x_tol = opts.refine_rel * (band_hi - band_lo);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const bool left_ok = i == 0 || values[i] <= values[i - 1];
    const bool right_ok = i + 1 == grid.size() || values[i] <= values[i + 1];
    if (!(left_ok && right_ok)) continue;
    const double a = i == 0 ? grid[0] : grid[i - 1];
    const double b = i + 1 == grid.size() ? grid.back() : grid[i + 1];
    ScalarMinimum refined = golden_section_min(eval, a, b, x_tol);
    if (refined.value < best.value) best = BandMin{refined.x, refined.value};
    if (values[i] < best.value) best = BandMin{grid[i], values[i]};
  }
  return best;
}

// Band threshold beta^(k)(gamma): the smallest coupled Robin parameter for
// which the deficit is nonnegative throughout band k. The band minimum is
// nondecreasing in beta, so its sign change is located by bisection.
inline BandThreshold beta_k(double gamma, long k, const ThresholdOptions& opts = {}) {
  if (!(gamma > 0.0))
    throw std::invalid_argument(
        "beta_k requires gamma > 0; the counting-function bound fails on the interval");
  detail::check_index(k);

  auto min_at = [&](double beta) {
    return band_min_deficit(gamma, BoundaryCondition::robin(beta), k, opts);
  };

  double lo = 0.05, hi = 8.0;
  int guard = 0;
  while (min_at(lo).value > 0.0) {
    lo *= 0.25;
    if (++guard > 40) throw convergence_error("beta_k lower bracket expansion failed", lo, hi);
  }
  guard = 0;
  while (min_at(hi).value < 0.0) {
    hi *= 4.0;
    if (++guard > 40) throw convergence_error("beta_k upper bracket expansion failed", lo, hi);
  }
  while (hi - lo > opts.beta_tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (min_at(mid).value < 0.0 ? lo : hi) = mid;
  }
  const double beta = 0.5 * (lo + hi);
  const BandMin m = min_at(beta);
  return BandThreshold{k, beta, m.worst_lambda, m.value};
}

// Lower bound for the critical parameter beta(gamma, 1) = sup_k beta^(k)(gamma),
// computed as the maximum over k <= k_max. The attaining k is reported; the
// true supremum ranges over all k, so the result is approximate from below.
inline ThresholdResult beta_critical_1(double gamma, long k_max,
                                       const ThresholdOptions& opts = {}) {
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  BandThreshold best = beta_k(gamma, 1, opts);
  for (long k = 2; k <= k_max; ++k) {
    const BandThreshold t = beta_k(gamma, k, opts);
    if (t.beta_k > best.beta_k) best = t;
  }
  return ThresholdResult{
      best.beta_k,
      Bracket{best.beta_k - 0.5 * opts.beta_tol, best.beta_k + 0.5 * opts.beta_tol},
      static_cast<double>(best.k), opts.beta_tol};
}

// Two-sided estimate for the critical parameter beta(gamma, d) in d >= 2,
// derived from one-dimensional data:
//   beta(gamma + (d-1)/2, 1) <= beta(gamma, d) <= beta(gamma, 1).
// Both ends are themselves k_max-truncated lower bounds for the respective
// one-dimensional suprema; the full supremum over cuboids is not enumerated.
inline Bracket beta_critical_sandwich(double gamma, int d, long k_max,
                                      const ThresholdOptions& opts = {}) {
  if (d < 2) throw std::invalid_argument("the sandwich applies to d >= 2");
  const double lo = beta_critical_1(gamma + 0.5 * (d - 1), k_max, opts).value;
  const double hi = beta_critical_1(gamma, k_max, opts).value;
  return Bracket{lo, hi};
}

struct ExcessResult {
  double value;
  double attaining_lambda;
};

// Grid lower bound for r_{gamma,1}(beta): the supremum over lambda of
// Tr(-Delta^{beta sqrt(lambda)} - lambda)^gamma / (L^sc_{gamma,1} lambda^{gamma+1/2}).
// Scanned on a log grid over (0, lambda_max] with golden refinement around
// the local maxima (skipped at gamma = 0, where the ratio jumps). The
// boundary-condition overload admits the Dirichlet/Neumann limits.
inline ExcessResult r_excess_1d(double gamma, const BoundaryCondition& bc, double lambda_max,
                                const ThresholdOptions& opts = {}) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("r_excess_1d requires gamma >= 0");
  if (!(lambda_max > 0.0)) throw std::invalid_argument("lambda_max must be > 0");

  auto ratio = [&](double lambda) {
    return detail::coupled_trace(gamma, bc, lambda) /
           (lsc(gamma, 1) * std::pow(lambda, gamma + 0.5));
  };

  const int n = std::max(opts.grid_points, 8);
  const double lambda_min = lambda_max * 1e-8;
  std::vector<double> grid(static_cast<std::size_t>(n));
  const double log_lo = std::log(lambda_min), log_hi = std::log(lambda_max);
  for (int i = 0; i < n; ++i)
    grid[static_cast<std::size_t>(i)] =
        std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(i) / (n - 1));

  std::vector<double> values(grid.size());
  parallel_for(grid.size(), opts.jobs, [&](std::size_t i) { values[i] = ratio(grid[i]); });

  ExcessResult best{values[0], grid[0]};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (values[i] > best.value) best = ExcessResult{values[i], grid[i]};
    if (gamma == 0.0) continue;
    const bool left_ok = i == 0 || values[i] >= values[i - 1];
    const bool right_ok = i + 1 == grid.size() || values[i] >= values[i + 1];
    if (!(left_ok && right_ok)) continue;
    const double a = i == 0 ? grid[0] : grid[i - 1];
    const double b = i + 1 == grid.size() ? grid.back() : grid[i + 1];
    ScalarMinimum refined =
        golden_section_min([&](double l) { return -ratio(l); }, a, b, (b - a) * 1e-10);
    if (-refined.value > best.value) best = ExcessResult{-refined.value, refined.x};
  }
  return best;
}

inline ExcessResult r_excess_1d(double gamma, double beta, double lambda_max,
                                const ThresholdOptions& opts = {}) {
  return r_excess_1d(gamma, BoundaryCondition::robin(beta), lambda_max, opts);
}

struct OscillationProfile {
  std::vector<DeficitSample> samples;
  double period_estimate;    // empirical period in sqrt(lambda), from autocorrelation
  double last_period_mean;   // mean of the oscillation over the final full period
};

// Samples the oscillation quantity on the given lambda grid (assumed uniform
// in sqrt(lambda) for the period statistics) and estimates the period by the
// first autocorrelation peak past the initial zero crossing.
inline OscillationProfile oscillation_profile(double gamma, double beta,
                                              const std::vector<double>& lambda_grid,
                                              int jobs = 1) {
  if (!(gamma > 0.0)) throw std::invalid_argument("oscillation_profile requires gamma > 0");
  detail::check_beta(beta);
  OscillationProfile out;
  out.samples.resize(lambda_grid.size());
  const BoundaryCondition bc = BoundaryCondition::robin(beta);
  parallel_for(lambda_grid.size(), jobs,
               [&](std::size_t i) { out.samples[i] = deficit(gamma, bc, lambda_grid[i]); });
  out.period_estimate = 0.0;
  out.last_period_mean = 0.0;
  const std::size_t n = out.samples.size();
  if (n < 8) return out;

  double mean = 0.0;
  for (const auto& s : out.samples) mean += s.oscillation;
  mean /= static_cast<double>(n);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = out.samples[i].oscillation - mean;

  const double h = (std::sqrt(lambda_grid.back()) - std::sqrt(lambda_grid.front())) /
                   static_cast<double>(n - 1);
  std::vector<double> corr(n / 2, 0.0);
  for (std::size_t lag = 0; lag < corr.size(); ++lag) {
    double c = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i) c += y[i] * y[i + lag];
    corr[lag] = c;
  }
  std::size_t first_neg = 0;
  while (first_neg < corr.size() && corr[first_neg] > 0.0) ++first_neg;
  if (first_neg == corr.size()) return out;
  std::size_t peak = first_neg;
  for (std::size_t lag = first_neg; lag < corr.size(); ++lag)
    if (corr[lag] > corr[peak]) peak = lag;
  out.period_estimate = static_cast<double>(peak) * h;

  if (out.period_estimate > 0.0) {
    const std::size_t span = std::min(n, static_cast<std::size_t>(
                                             std::llround(out.period_estimate / h)));
    double s = 0.0;
    for (std::size_t i = n - span; i < n; ++i) s += out.samples[i].oscillation;
    out.last_period_mean = span > 0 ? s / static_cast<double>(span) : 0.0;
  }
  return out;
}

}  // namespace robin
