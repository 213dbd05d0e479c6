#pragma once

// Acceptance suite: end-to-end checks of the library against closed forms,
// independent enumerations, and trend tests at desk scale. Shared between
// the `selftest` CLI subcommand and the ctest acceptance binary.

#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "robin/robin.hpp"
#include "robin/sweep.hpp"

namespace robin::selftest {

struct CriterionResult {
  int id;
  std::string name;
  bool pass;
  std::string detail;
  double seconds;
};

namespace detail {

struct Checker {
  bool pass = true;
  std::ostringstream detail;
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << (detail.tellp() > 0 ? "; " : "") << what;
    }
  }
  template <class T>
  void note(const std::string& key, T value) {
    detail << (detail.tellp() > 0 ? "; " : "") << key << "=" << value;
  }
};

inline std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i)
    g[static_cast<std::size_t>(i)] = std::exp(llo + (lhi - llo) * i / (n - 1.0));
  return g;
}

// Literal tensor-product enumeration, independent of the recursive path.
inline double brute_force_riesz(double gamma, double lambda, const BoundaryCondition& bc,
                                const std::vector<double>& sides) {
  std::vector<std::vector<double>> spectra;
  for (double l : sides) {
    std::vector<double> s;
    for (long k = 1;; ++k) {
      const double lk = solve_interval_eigenvalue(k, bc, l).lambda;
      if (lk > lambda) break;
      s.push_back(lk);
    }
    spectra.push_back(std::move(s));
  }
  double sum = 0.0;
  auto contribute = [&](double total) {
    if (gamma == 0.0) {
      if (total <= lambda) sum += 1.0;
    } else if (total < lambda) {
      sum += std::pow(lambda - total, gamma);
    }
  };
  if (sides.size() == 2) {
    for (double a : spectra[0])
      for (double b : spectra[1]) contribute(a + b);
  } else {
    for (double a : spectra[0])
      for (double b : spectra[1])
        for (double c : spectra[2]) contribute(a + b + c);
  }
  return sum;
}

// Shared dataset for the band-threshold criteria: beta_k(gamma, k) for
// k = 1..3 over gamma in [0.2, 20] step 0.2.
struct BandDataset {
  std::vector<double> gammas;
  std::vector<std::vector<double>> beta_by_k;  // [k-1][gamma index]
  bool ready = false;
};

inline const BandDataset& band_dataset(int jobs) {
  static BandDataset data;
  if (data.ready) return data;
  for (double g = 0.2; g <= 20.0 + 1e-9; g += 0.2) data.gammas.push_back(g);
  data.beta_by_k.assign(3, std::vector<double>(data.gammas.size(), 0.0));
  ThresholdOptions opts;
  opts.jobs = 1;  // parallelism across cells instead
  const std::size_t cells = data.gammas.size() * 3;
  parallel_for(cells, jobs, [&](std::size_t idx) {
    const std::size_t gi = idx / 3;
    const long k = static_cast<long>(idx % 3) + 1;
    data.beta_by_k[static_cast<std::size_t>(k - 1)][gi] =
        beta_k(data.gammas[gi], k, opts).beta_k;
  });
  data.ready = true;
  return data;
}

// Sign-change location of f(gamma) = a(gamma) - b(gamma) on the dataset grid.
inline double crossing_gamma(const std::vector<double>& gammas, const std::vector<double>& a,
                             const std::vector<double>& b) {
  for (std::size_t i = 0; i + 1 < gammas.size(); ++i) {
    const double fa = a[i] - b[i];
    const double fb = a[i + 1] - b[i + 1];
    if (fa > 0.0 && fb <= 0.0) return 0.5 * (gammas[i] + gammas[i + 1]);
  }
  return -1.0;
}

}  // namespace detail

inline std::vector<CriterionResult> run_acceptance(int jobs = 1,
                                                   std::ostream* progress = nullptr) {
  using detail::Checker;
  std::vector<CriterionResult> results;

  auto run = [&](int id, const std::string& name, const std::function<void(Checker&)>& body) {
    Checker c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      body(c);
    } catch (const std::exception& e) {
      c.pass = false;
      c.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    results.push_back({id, name, c.pass, c.detail.str(), secs});
    if (progress) {
      (*progress) << (c.pass ? "[PASS] " : "[FAIL] ") << std::setw(2) << id << "  " << name
                  << "  (" << std::fixed << std::setprecision(1) << secs << "s)";
      if (!c.pass) (*progress) << "  -- " << c.detail.str();
      (*progress) << "\n" << std::defaultfloat;
      progress->flush();
    }
  };

  // 1. Closed-form Weyl sign-change thresholds.
  run(1, "closed-form beta_W values", [&](Checker& c) {
    const double b0 = beta_w(0.0, 0).value;
    const double b12 = beta_w(0.5, 0).value;
    c.expect(std::abs(b0 - 1.0) <= 1e-10, "beta_W(0,0) != 1 within 1e-10");
    c.expect(std::abs(b12 - 0.75) <= 1e-10, "beta_W(1/2,0) != 3/4 within 1e-10");
  });

  // 2. c* and the scaled large-gamma limit of beta_W.
  run(2, "c* root and beta_W sqrt(gamma) limit", [&](Checker& c) {
    const double cs = c_star();
    c.expect(std::abs(2.0 * erfcx(cs) - 1.0) <= 1e-11, "defining equation residual > 1e-11");
    c.expect(std::abs(cs - 0.769) <= 1e-3, "c* not within 1e-3 of 0.769");
    const double s2 = beta_w(1e2, 0).value * 10.0;
    const double s3 = beta_w(1e3, 0).value * std::sqrt(1e3);
    const double s4 = beta_w(1e4, 0).value * 100.0;
    c.expect(std::abs(s2 / cs - 1.0) <= 0.03, "gamma=1e2 scaled value off c* by > 3%");
    c.expect(std::abs(s4 / cs - 1.0) <= 0.01, "gamma=1e4 scaled value off c* by > 1%");
    c.expect(s2 < s3 && s3 < s4, "scaled values not monotone in gamma");
  });

  // 3. Eigenvalue correctness across the first thousand bands.
  run(3, "eigenvalue brackets, interlacing, derivative", [&](Checker& c) {
    const double betas[] = {0.1, 1.0, 10.0};
    std::atomic<bool> brackets{true}, interlace{true}, deriv_range{true}, deriv_fd{true};
    parallel_for(1000, jobs, [&](std::size_t i) {
      const long k = static_cast<long>(i) + 1;
      for (double beta : betas) {
        const double l = solve_interval_eigenvalue(k, BoundaryCondition::robin(beta), 1.0).lambda;
        const Bracket b = arctan_bracket(k, beta);
        if (!(b.lo < l && l < b.hi)) brackets.store(false);
        const double lo = pi * pi * static_cast<double>(k - 1) * static_cast<double>(k - 1);
        const double hi = pi * pi * static_cast<double>(k) * static_cast<double>(k);
        if (!(lo < l && l < hi)) interlace.store(false);
        const double d = eigenvalue_beta_derivative(k, beta);
        if (!(d >= 0.0 && d <= 4.0)) deriv_range.store(false);
        // Step large enough that lambda's own rounding (about lambda * eps)
        // stays below 1e-5 of the difference quotient at k ~ 10^3.
        const double h = 1e-3 * std::max(1.0, beta);
        const double up =
            solve_interval_eigenvalue(k, BoundaryCondition::robin(beta + h), 1.0).lambda;
        const double dn =
            solve_interval_eigenvalue(k, BoundaryCondition::robin(beta - h), 1.0).lambda;
        const double fd = (up - dn) / (2.0 * h);
        const double scale = std::max(std::abs(fd), 1e-6);
        if (std::abs(d - fd) > 1e-5 * scale) deriv_fd.store(false);
      }
    });
    c.expect(brackets.load(), "bracket containment violated");
    c.expect(interlace.load(), "interlacing violated");
    c.expect(deriv_range.load(), "derivative outside [0,4]");
    c.expect(deriv_fd.load(), "derivative off central differences by > 1e-5 relative");
  });

  // 4. Small-beta law for the ground state.
  run(4, "small-beta ground-state law", [&](Checker& c) {
    for (double beta : {1e-2, 1e-3, 1e-4}) {
      const double l = solve_interval_eigenvalue(1, BoundaryCondition::robin(beta), 1.0).lambda;
      c.expect(std::abs(l / (2.0 * beta) - 1.0) <= 5.0 * beta,
               "lambda_1/(2 beta) off by more than 5 beta at beta=" + cli::format_double(beta));
    }
  });

  // 5. Cuboid recursion against brute-force enumeration.
  run(5, "Riesz recursion equals brute force", [&](Checker& c) {
    const std::vector<std::vector<double>> geometries = {
        {1.0, 1.0}, {0.7, 1.3}, {1.0, 1.0, 1.0}, {0.6, 1.1, 1.9}};
    const std::vector<BoundaryCondition> bcs = {
        BoundaryCondition::robin(0.5), BoundaryCondition::robin(2.0),
        BoundaryCondition::dirichlet(), BoundaryCondition::neumann()};
    for (const auto& sides : geometries) {
      for (const auto& bc : bcs) {
        for (double gamma : {0.0, 1.0}) {
          for (double lambda : {50.0, 500.0}) {
            const double got =
                riesz_mean_cuboid(SpectralQuery(gamma, lambda, bc, Cuboid(sides))).value;
            const double want = detail::brute_force_riesz(gamma, lambda, bc, sides);
            const bool ok = want == 0.0 ? got == 0.0
                                        : std::abs(got - want) <= 1e-10 * std::abs(want);
            c.expect(ok, "mismatch vs brute force (d=" + std::to_string(sides.size()) +
                             ", bc=" + bc.name() + ", gamma=" + cli::format_double(gamma) +
                             ", lambda=" + cli::format_double(lambda) + ")");
          }
        }
      }
    }
  });

  // 6. Counting convention and the one-term Weyl error on the interval.
  run(6, "Dirichlet counting convention", [&](Checker& c) {
    for (long k = 1; k <= 50; ++k) {
      // Query exactly at the k-th eigenvalue as the library rounds it (a
      // separately rounded pi^2 k^2 can sit one ulp off the tie).
      const double lambda =
          solve_interval_eigenvalue(k, BoundaryCondition::dirichlet(), 1.0).lambda;
      const double n = riesz_mean_interval(SpectralQuery(0.0, lambda,
                                                         BoundaryCondition::dirichlet(),
                                                         Cuboid::interval(1.0)))
                           .value;
      c.expect(n == static_cast<double>(k), "count at pi^2 k^2 is not k");
      const double below =
          riesz_mean_interval(SpectralQuery(0.0, std::nextafter(lambda, 0.0),
                                            BoundaryCondition::dirichlet(),
                                            Cuboid::interval(1.0)))
              .value;
      c.expect(below == static_cast<double>(k - 1), "count just below pi^2 k^2 is not k-1");
    }
    std::atomic<bool> weyl_ok{true};
    const int n_grid = 10000;
    parallel_for(n_grid, jobs, [&](std::size_t i) {
      const double lambda = 1e6 * (static_cast<double>(i) + 1.0) / n_grid;
      const double n = riesz_mean_interval(SpectralQuery(0.0, lambda,
                                                          BoundaryCondition::dirichlet(),
                                                          Cuboid::interval(1.0)))
                            .value;
      if (std::abs(n - std::sqrt(lambda) / pi) > 1.0) weyl_ok.store(false);
    });
    c.expect(weyl_ok.load(), "|count - sqrt(lambda)/pi| exceeded 1");
  });

  // 7. Aizenman-Lieb lift vs direct evaluation.
  run(7, "Aizenman-Lieb identity", [&](Checker& c) {
    const std::vector<std::pair<double, double>> orders = {{1.0, 2.0}, {0.5, 1.5}};
    const std::vector<BoundaryCondition> bcs = {BoundaryCondition::robin(1.0),
                                                BoundaryCondition::dirichlet()};
    for (const auto& [g, gp] : orders) {
      for (const auto& bc : bcs) {
        for (double lambda : {50.0, 100.0}) {
          const auto r = aizenman_lieb_lift(
              g, gp, SpectralQuery(g, lambda, bc, Cuboid::interval(1.0)));
          c.expect(std::abs(r.lifted - r.direct) <= 1e-8 * std::max(1.0, std::abs(r.direct)),
                   "lift mismatch at gamma=" + cli::format_double(g) + "->" +
                       cli::format_double(gp) + ", bc=" + bc.name() +
                       ", lambda=" + cli::format_double(lambda));
        }
      }
    }
  });

  // 8. The two integral representations of L and its limits.
  run(8, "L-representation agreement and limits", [&](Checker& c) {
    for (double a : {0.5, 1.0, 1.5, 2.0, 5.0}) {
      double prev = 1e300;
      for (double beta : {0.1, 0.5, 1.0, 2.0, 10.0}) {
        const double v = l_const(a, 0, beta, LForm::density);
        const double w = l_const(a, 0, beta, LForm::arctan);
        c.expect(std::abs(v - w) <= 1e-10, "representations differ at a=" +
                                               cli::format_double(a) +
                                               ", beta=" + cli::format_double(beta));
        c.expect(v < prev, "L not decreasing in beta");
        prev = v;
      }
      c.expect(std::abs(l_const(a, 0, 1e-8) - lsc(a, 0)) <= 1e-6, "beta->0 limit off");
      c.expect(std::abs(l_const(a, 0, 1e8) + lsc(a, 0)) <= 1e-6, "beta->infinity limit off");
    }
  });

  // 9. Boundedness trend of the 1D two-term remainder in the coupled regime.
  run(9, "1D two-term remainder boundedness", [&](Checker& c) {
    const auto grid = detail::log_grid(1e2, 1e6, 200);
    for (double gamma : {0.5, 1.0, 2.0}) {
      for (double beta : {0.5, 1.0, 2.0}) {
        std::vector<double> normalized(grid.size());
        parallel_for(grid.size(), jobs, [&](std::size_t i) {
          const SpectralQuery q(gamma, grid[i], BoundaryCondition::robin(beta),
                                Cuboid::interval(1.0));
          normalized[i] = std::abs(two_term_prediction(q, true).normalized_remainder);
        });
        double first_decade = 0.0, last_decade = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
          if (grid[i] <= 1e3) first_decade = std::max(first_decade, normalized[i]);
          if (grid[i] >= 1e5) last_decade = std::max(last_decade, normalized[i]);
        }
        c.expect(last_decade <= 2.0 * first_decade,
                 "remainder grows (gamma=" + cli::format_double(gamma) +
                     ", beta=" + cli::format_double(beta) +
                     "): first=" + cli::format_double(first_decade) +
                     " last=" + cli::format_double(last_decade));
      }
    }
  });

  // 10. Strict Berezin positivity of the Dirichlet deficit.
  run(10, "Dirichlet deficit positivity", [&](Checker& c) {
    for (double gamma : {0.5, 1.0, 2.0}) {
      std::atomic<bool> ok{true};
      const int n_grid = 10000;
      parallel_for(n_grid, jobs, [&](std::size_t i) {
        const double lambda = 1e6 * (static_cast<double>(i) + 1.0) / n_grid;
        if (deficit(gamma, BoundaryCondition::dirichlet(), lambda).deficit < 0.0) ok.store(false);
      });
      c.expect(ok.load(), "negative Dirichlet deficit at gamma=" + cli::format_double(gamma));
    }
  });

  // 11. Band-threshold crossings of the first three bands.
  run(11, "band-threshold crossings", [&](Checker& c) {
    const auto& data = detail::band_dataset(jobs);
    const double g12 = detail::crossing_gamma(data.gammas, data.beta_by_k[0], data.beta_by_k[1]);
    const double g23 = detail::crossing_gamma(data.gammas, data.beta_by_k[1], data.beta_by_k[2]);
    c.note("crossing_12", g12);
    c.note("crossing_23", g23);
    c.expect(g12 >= 2.0 && g12 <= 3.0, "beta^(1)/beta^(2) crossing outside [2,3]");
    c.expect(g23 >= 12.0 && g23 <= 16.0, "beta^(2)/beta^(3) crossing outside [12,16]");
  });

  // 12. Threshold semantics of the band minimum.
  run(12, "band-threshold semantics", [&](Checker& c) {
    ThresholdOptions opts;
    opts.jobs = jobs;
    const std::vector<std::pair<double, long>> cases = {{1.0, 1}, {10.0, 2}};
    for (const auto& [gamma, k] : cases) {
      const BandThreshold t = beta_k(gamma, k, opts);
      c.expect(std::abs(t.deficit_at_worst) <= 1e-6, "band minimum at threshold above 1e-6");
      const double above =
          band_min_deficit(gamma, BoundaryCondition::robin(t.beta_k + 1e-3), k, opts).value;
      const double below =
          band_min_deficit(gamma, BoundaryCondition::robin(t.beta_k - 1e-3), k, opts).value;
      c.expect(above > 0.0, "band minimum not positive just above the threshold");
      c.expect(below < 0.0, "band minimum not negative just below the threshold");
    }
  });

  // 13. The critical parameter strictly exceeds the Weyl sign-change point.
  run(13, "critical parameter exceeds beta_W", [&](Checker& c) {
    const auto& data = detail::band_dataset(jobs);
    for (std::size_t i = 0; i < data.gammas.size(); ++i) {
      const double crit = std::max({data.beta_by_k[0][i], data.beta_by_k[1][i],
                                    data.beta_by_k[2][i]});
      const double bw = beta_w(data.gammas[i], 0).value;
      c.expect(crit > bw, "critical parameter not above beta_W at gamma=" +
                              cli::format_double(data.gammas[i]));
    }
  });

  // 14. Blow-up of the normalized Riesz mean along near-Neumann trial slabs.
  run(14, "trial-slab blow-up", [&](Checker& c) {
    const double gamma = 1.0;
    const auto grid = detail::log_grid(1e3, 1e6, 7);
    std::vector<double> normalized(grid.size());
    parallel_for(grid.size(), jobs, [&](std::size_t i) {
      const double lambda = grid[i];
      const double beta = std::pow(lambda, 0.25);
      const double l = 2.5 * beta / lambda;  // (2 + eps) beta / lambda with eps = 1/2
      const SpectralQuery q(gamma, lambda, BoundaryCondition::robin(beta),
                            Cuboid({l, 1.0 / l}));
      normalized[i] =
          riesz_mean_cuboid(q).value / (lsc(gamma, 2) * std::pow(lambda, gamma + 1.0));
    });
    c.note("final_normalized", normalized.back());
    c.expect(normalized.back() > 2.0, "normalized value did not exceed 2 by lambda=1e6");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
      if (grid[i] >= 1e5)
        c.expect(normalized[i + 1] > normalized[i], "not increasing over the last decade");
  });

  // 15. Shape transition in the coupled regime (finite-lambda proxy).
  run(15, "shape transition: cube vs collapse", [&](Checker& c) {
    ThresholdOptions topts;
    topts.jobs = jobs;
    ShapeOptions sopts;
    sopts.jobs = jobs;
    const double crit = beta_critical_1(1.5, 3, topts).value;
    const double bw = beta_w(1.5, 0).value;
    const std::vector<double> grid = {1e2, 1e3, 1e4};

    const auto super = classify_trajectory(1.0, 2, 2.0 * crit, grid, sopts);
    c.expect(super.verdict == TrajectoryVerdict::ConvergesToCube,
             "supercritical trajectory verdict is not converges-to-cube");
    c.expect(super.aspect_ratios.back() <= 1.05, "final aspect ratio above 1.05");

    const auto sub = classify_trajectory(1.0, 2, 0.5 * bw, grid, sopts);
    c.expect(sub.verdict == TrajectoryVerdict::Collapses,
             "subcritical trajectory verdict is not collapses");
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = grid.size() / 2; i < grid.size(); ++i) {
      lo = std::min(lo, sub.min_side_wavelengths[i]);
      hi = std::max(hi, sub.min_side_wavelengths[i]);
    }
    c.expect(hi - lo <= 10.0, "min-side wavelength band wider than 10");
  });

  // 16. Oscillation signature at the Weyl sign-change point.
  run(16, "oscillation period in sqrt(lambda)", [&](Checker& c) {
    const double bw1 = beta_w(1.0, 0).value;
    std::vector<double> grid;
    const int n = 2048;
    for (int i = 0; i < n; ++i) {
      const double s = 300.0 * pi + 20.0 * pi * static_cast<double>(i) / (n - 1);
      grid.push_back(s * s);
    }
    const auto prof = oscillation_profile(1.0, bw1, grid, jobs);
    c.note("period_over_pi", prof.period_estimate / pi);
    c.expect(std::abs(prof.period_estimate / pi - 1.0) <= 0.05,
             "autocorrelation period off pi by more than 5%");
    int pos = 0, neg = 0;
    for (const auto& s : prof.samples) (s.oscillation > 0.0 ? pos : neg) += 1;
    c.expect(pos > 0 && neg > 0, "oscillation does not attain both signs");
  });

  return results;
}

inline int print_summary(const std::vector<CriterionResult>& results, std::ostream& os) {
  int failed = 0;
  os << "acceptance criteria:\n";
  for (const auto& r : results) {
    os << "  " << (r.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << r.id << "  " << r.name;
    if (!r.pass) {
      os << "  -- " << r.detail;
      ++failed;
    }
    os << "\n";
  }
  os << (failed == 0 ? "all criteria passed\n"
                     : std::to_string(failed) + " criteria failed\n");
  return failed;
}

}  // namespace robin::selftest
