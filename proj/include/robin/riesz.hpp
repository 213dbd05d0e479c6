#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "robin/boundary.hpp"
#include "robin/cuboid.hpp"
#include "robin/errors.hpp"
#include "robin/interval.hpp"
#include "robin/quadrature.hpp"

namespace robin {

// Everything needed to evaluate one Riesz mean Tr(-Delta - lambda)_-^gamma.
struct SpectralQuery {
  double gamma;
  double lambda;
  BoundaryCondition bc;
  Cuboid geometry;

  SpectralQuery(double gamma_, double lambda_, BoundaryCondition bc_, Cuboid geometry_)
      : gamma(gamma_), lambda(lambda_), bc(std::move(bc_)), geometry(std::move(geometry_)) {
    if (!(gamma >= 0.0)) throw std::invalid_argument("Riesz order gamma must be >= 0");
    if (!(lambda >= 0.0)) throw std::invalid_argument("spectral parameter lambda must be >= 0");
  }
};

struct RieszValue {
  double value = 0.0;
  std::int64_t terms_counted = 0;  // eigenvalues that contributed
  double truncation_bound = 0.0;   // always 0: enumeration is exact
};

struct RieszOptions {
  double term_cap = 1e8;  // hard cap on enumerated lattice points
  int axis = -1;          // top-level recursion axis; -1 = shortest side
};

namespace detail {

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Shared running counter for lattice work; one tick per 1D eigenvalue visit.
struct WorkBudget {
  std::int64_t remaining;
  double cap;
  void tick() {
    if (--remaining < 0)
      throw capacity_error("Riesz enumeration exceeded the term cap", cap, cap);
  }
};

inline WorkBudget make_budget(double term_cap) {
  const double capped = std::min(term_cap, 9e17);
  return WorkBudget{static_cast<std::int64_t>(capped), term_cap};
}

inline double unit_interval_eigenvalue(long k, const BoundaryCondition& bc, double length) {
  return solve_interval_eigenvalue(k, bc, length).lambda;
}

// Lazily grown 1D spectrum of one side. The recursion revisits the same side
// once per branch of the outer sides, so each evaluation memoizes its own
// spectra; the cache is owned by a single call and needs no synchronization.
struct SideSpectrum {
  BoundaryCondition bc;
  double length;
  std::vector<double> known;

  double eigenvalue(long k) {
    while (static_cast<long>(known.size()) < k)
      known.push_back(
          unit_interval_eigenvalue(static_cast<long>(known.size()) + 1, bc, length));
    return known[static_cast<std::size_t>(k - 1)];
  }
};

inline std::vector<SideSpectrum> make_spectra(const std::vector<double>& sides,
                                              const BoundaryCondition& bc) {
  std::vector<SideSpectrum> spectra;
  spectra.reserve(sides.size());
  for (double l : sides) spectra.push_back(SideSpectrum{bc, l, {}});
  return spectra;
}

// gamma = 0 counts eigenvalues <= lambda; gamma > 0 sums (lambda - l_k)^gamma
// over l_k < lambda, so terms at l_k = lambda contribute nothing.
inline void interval_accumulate(double gamma, double lambda, SideSpectrum& spectrum,
                                KahanSum& acc, std::int64_t& count, WorkBudget& budget) {
  if (lambda < 0.0) return;
  const bool counting = gamma == 0.0;
  for (long k = 1;; ++k) {
    budget.tick();
    const double lk = spectrum.eigenvalue(k);
    if (counting ? lk > lambda : lk >= lambda) break;
    acc.add(counting ? 1.0 : std::pow(lambda - lk, gamma));
    ++count;
  }
}

inline void cuboid_accumulate(double gamma, double lambda, std::vector<SideSpectrum>& spectra,
                              std::size_t first, KahanSum& acc, std::int64_t& count,
                              WorkBudget& budget) {
  if (first + 1 == spectra.size()) {
    interval_accumulate(gamma, lambda, spectra[first], acc, count, budget);
    return;
  }
  const bool counting = gamma == 0.0;
  for (long k = 1;; ++k) {
    budget.tick();
    const double lk = spectra[first].eigenvalue(k);
    const double shifted = lambda - lk;
    // Branch pruning matches the counting conventions: keep shifted >= 0 when
    // counting, shifted > 0 when gamma > 0. Eigenvalues increase with k, so
    // the first violation ends the loop.
    if (counting ? shifted < 0.0 : shifted <= 0.0) break;
    cuboid_accumulate(gamma, shifted, spectra, first + 1, acc, count, budget);
  }
}

}  // namespace detail

// Riesz mean on a single interval by direct summation.
inline RieszValue riesz_mean_interval(const SpectralQuery& q, const RieszOptions& options = {}) {
  if (q.geometry.dimension() != 1)
    throw std::invalid_argument("riesz_mean_interval expects a 1-d geometry");
  detail::KahanSum acc;
  std::int64_t count = 0;
  detail::WorkBudget budget = detail::make_budget(options.term_cap);
  detail::SideSpectrum spectrum{q.bc, q.geometry.side(0), {}};
  detail::interval_accumulate(q.gamma, q.lambda, spectrum, acc, count, budget);
  return RieszValue{acc.sum, count, 0.0};
}

// Riesz mean on a cuboid via separation of variables: enumerate the 1D modes
// of one side and recurse on the remaining sides with the shifted spectral
// parameter. The recursion descends shortest-side-first, which minimizes
// branching; options.axis overrides the choice at the top level only (any
// axis gives the same value, which the tests exercise).
inline RieszValue riesz_mean_cuboid(const SpectralQuery& q, const RieszOptions& options = {}) {
  const Cuboid& R = q.geometry;
  std::vector<double> order(R.sides());  // ascending already
  if (options.axis >= 0) {
    if (options.axis >= R.dimension())
      throw std::invalid_argument("axis out of range");
    std::swap(order[0], order[static_cast<std::size_t>(options.axis)]);
    std::sort(order.begin() + 1, order.end());
  }

  detail::KahanSum acc;
  std::int64_t count = 0;
  detail::WorkBudget budget = detail::make_budget(options.term_cap);
  std::vector<detail::SideSpectrum> spectra = detail::make_spectra(order, q.bc);
  detail::cuboid_accumulate(q.gamma, q.lambda, spectra, 0, acc, count, budget);
  return RieszValue{acc.sum, count, 0.0};
}

// Variational a priori bound C_d |R| lambda^{gamma+d/2} (1 + (min_i l_i sqrt(lambda))^{-d})
// with C_d = 3^{d-1}; dominates the Riesz mean for every boundary condition.
// Expanded as C_d |R| (lambda^{gamma+d/2} + lambda^gamma min^{-d}) so that the
// lambda = 0 case stays finite.
inline double apriori_bound(const SpectralQuery& q) {
  const int d = q.geometry.dimension();
  const double c_d = std::pow(3.0, d - 1);
  const double min_pow = std::pow(q.geometry.min_side(), -static_cast<double>(d));
  return c_d * q.geometry.volume() *
         (std::pow(q.lambda, q.gamma + 0.5 * d) + std::pow(q.lambda, q.gamma) * min_pow);
}

// All tensor eigenvalues <= lambda, sorted ascending (kink set for the
// Aizenman-Lieb quadrature).
inline std::vector<double> collect_eigenvalues(const Cuboid& R, const BoundaryCondition& bc,
                                               double lambda, double term_cap = 1e7) {
  std::vector<double> out;
  detail::WorkBudget budget = detail::make_budget(term_cap);
  std::vector<detail::SideSpectrum> spectra = detail::make_spectra(R.sides(), bc);
  struct Walker {
    std::vector<detail::SideSpectrum>& spectra;
    double lambda;
    std::vector<double>* out;
    detail::WorkBudget* budget;
    void walk(std::size_t i, double partial) {
      for (long k = 1;; ++k) {
        budget->tick();
        const double total = partial + spectra[i].eigenvalue(k);
        if (total > lambda) break;
        if (i + 1 == spectra.size())
          out->push_back(total);
        else
          walk(i + 1, total);
      }
    }
  };
  Walker w{spectra, lambda, &out, &budget};
  w.walk(0, 0.0);
  std::sort(out.begin(), out.end());
  return out;
}

struct LiftResult {
  double lifted = 0.0;
  double direct = 0.0;
};

// Aizenman-Lieb identity: lifts the order-gamma Riesz mean to order
// gamma_prime > gamma,
//   Tr^{gamma'}(lambda) = B(1+gamma, gamma'-gamma)^{-1}
//       int_0^lambda (lambda - tau)^{gamma'-gamma-1} Tr^{gamma}(tau) dtau,
// valid when the operator does not depend on tau. With `coupled` set, a Robin
// parameter is first frozen at beta * sqrt(lambda) so the identity applies in
// the coupled regime. Returns the quadrature value next to the directly
// enumerated mean at gamma'.
inline LiftResult aizenman_lieb_lift(double gamma, double gamma_prime, const SpectralQuery& q,
                                     bool coupled = false, double quad_tol = 1e-11) {
  if (!(gamma >= 0.0) || !(gamma_prime > gamma))
    throw std::invalid_argument("need 0 <= gamma < gamma_prime");

  BoundaryCondition bc = q.bc;
  if (coupled && bc.is_robin()) bc = BoundaryCondition::robin(bc.beta() * std::sqrt(q.lambda));
  const SpectralQuery fixed(gamma_prime, q.lambda, bc, q.geometry);

  LiftResult out;
  out.direct = riesz_mean_cuboid(fixed).value;

  const double exponent = gamma_prime - gamma - 1.0;
  auto integrand = [&](double tau) {
    const SpectralQuery qt(gamma, tau, bc, q.geometry);
    const double w = exponent == 0.0 ? 1.0 : std::pow(q.lambda - tau, exponent);
    return w * riesz_mean_cuboid(qt).value;
  };

  const std::vector<double> kinks = collect_eigenvalues(q.geometry, bc, q.lambda);
  if (kinks.empty()) return out;  // empty spectrum below lambda: both sides 0

  const double scale = std::max(1.0, std::abs(out.direct));
  QuadratureResult quad = integrate_with_breakpoints(
      integrand, kinks.front(), q.lambda, kinks, quad_tol * scale, 1e-12);
  if (!quad.converged)
    throw convergence_error("Aizenman-Lieb quadrature did not converge", kinks.front(),
                            q.lambda);

  const double log_beta = std::lgamma(1.0 + gamma) + std::lgamma(gamma_prime - gamma) -
                          std::lgamma(1.0 + gamma_prime);
  out.lifted = quad.value / std::exp(log_beta);
  return out;
}

}  // namespace robin
