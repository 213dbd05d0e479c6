#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "robin/riesz.hpp"

using namespace robin;

namespace {

// Independent oracle: literal multi-index enumeration over tensor eigenvalue
// tuples (nested loops, naive accumulation), sharing nothing with the
// production recursion. d <= 3.
double brute_force_riesz(double gamma, double lambda, const BoundaryCondition& bc,
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
  REQUIRE(sides.size() <= 3);
  if (sides.size() == 1) {
    for (double a : spectra[0]) contribute(a);
  } else if (sides.size() == 2) {
    for (double a : spectra[0])
      for (double b : spectra[1]) contribute(a + b);
  } else {
    for (double a : spectra[0])
      for (double b : spectra[1])
        for (double c : spectra[2]) contribute(a + b + c);
  }
  return sum;
}

SpectralQuery q1(double gamma, double lambda, BoundaryCondition bc, double l = 1.0) {
  return SpectralQuery(gamma, lambda, bc, Cuboid::interval(l));
}

}  // namespace

TEST_CASE("interval Riesz means, closed cases") {
  // Only k = 1 contributes below 2 pi^2 on the Dirichlet interval.
  CHECK(riesz_mean_interval(q1(1.0, 2.0 * pi * pi, BoundaryCondition::dirichlet())).value ==
        doctest::Approx(pi * pi).epsilon(1e-14));
  // Counting includes the eigenvalue at lambda itself.
  const auto count = riesz_mean_interval(q1(0.0, pi * pi, BoundaryCondition::dirichlet()));
  CHECK(count.value == 1.0);
  CHECK(count.terms_counted == 1);
  CHECK(count.truncation_bound == 0.0);
  // gamma = 1 Dirichlet at lambda = 100: sum over k = 1..3 of (100 - pi^2 k^2).
  CHECK(riesz_mean_interval(q1(1.0, 100.0, BoundaryCondition::dirichlet())).value ==
        doctest::Approx(300.0 - 14.0 * pi * pi).epsilon(1e-14));
}

TEST_CASE("counting convention at eigenvalues") {
  for (long k : {1L, 2L, 5L, 50L}) {
    // Query at the eigenvalue as the library rounds it, so the tie is exact.
    const double lambda = solve_interval_eigenvalue(k, BoundaryCondition::dirichlet(), 1.0).lambda;
    CHECK(riesz_mean_interval(q1(0.0, lambda, BoundaryCondition::dirichlet())).value ==
          static_cast<double>(k));
    // Just below the eigenvalue only k-1 modes are counted.
    CHECK(riesz_mean_interval(q1(0.0, lambda * (1.0 - 1e-12), BoundaryCondition::dirichlet()))
              .value == static_cast<double>(k - 1));
  }
  // gamma > 0: a term at lambda_k = lambda contributes zero and is not counted.
  const auto at_eig = riesz_mean_interval(q1(1.0, pi * pi, BoundaryCondition::dirichlet()));
  CHECK(at_eig.terms_counted == 0);
  CHECK(at_eig.value == 0.0);
}

TEST_CASE("Dirichlet order-1 closed form matches enumeration") {
  // Re-derived explicit sum: with x = sqrt(lambda)/pi and f = {x},
  //   Tr(-Delta^D - lambda)_- = (2/(3 pi)) lambda^{3/2} - lambda/2
  //     + pi sqrt(lambda) (f (1 - f) - 1/6) + (pi^2/6) f (1 - 3 f + 2 f^2).
  // The -1/6 makes the sqrt(lambda) coefficient zero-mean over a period of f.
  auto closed_form = [](double lambda) {
    const double x = std::sqrt(lambda) / pi;
    const double f = x - std::floor(x);
    return 2.0 / (3.0 * pi) * std::pow(lambda, 1.5) - 0.5 * lambda +
           pi * std::sqrt(lambda) * (f * (1.0 - f) - 1.0 / 6.0) +
           pi * pi / 6.0 * f * (1.0 - 3.0 * f + 2.0 * f * f);
  };
  for (double lambda : {0.5, 9.0, 100.0, 1234.5, 98765.0, 1e6}) {
    const double direct = riesz_mean_interval(q1(1.0, lambda, BoundaryCondition::dirichlet())).value;
    CHECK(direct == doctest::Approx(closed_form(lambda)).epsilon(1e-11));
  }
}

TEST_CASE("Robin interval value sits between Dirichlet and Neumann") {
  const double lambda = 100.0;
  const double dir = riesz_mean_interval(q1(1.0, lambda, BoundaryCondition::dirichlet())).value;
  const double rob = riesz_mean_interval(q1(1.0, lambda, BoundaryCondition::robin(1.0))).value;
  const double neu = riesz_mean_interval(q1(1.0, lambda, BoundaryCondition::neumann())).value;
  CHECK(dir < rob);
  CHECK(rob < neu);
}

TEST_CASE("cuboid Riesz means, closed cases") {
  const Cuboid square = Cuboid::cube(2);
  CHECK(riesz_mean_cuboid(SpectralQuery(0.0, 2.0 * pi * pi, BoundaryCondition::dirichlet(),
                                        square))
            .value == 1.0);
  CHECK(riesz_mean_cuboid(SpectralQuery(1.0, 0.0, BoundaryCondition::neumann(), square)).value ==
        0.0);
  CHECK(riesz_mean_cuboid(SpectralQuery(1.0, 1.0, BoundaryCondition::neumann(), square)).value ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("recursion equals brute-force enumeration") {
  const std::vector<std::vector<double>> geometries = {
      {1.0, 2.0}, {0.7, 1.3}, {1.0, 1.0, 1.0}, {0.6, 1.1, 1.9}};
  const std::vector<BoundaryCondition> bcs = {
      BoundaryCondition::robin(0.5), BoundaryCondition::robin(2.0),
      BoundaryCondition::dirichlet(), BoundaryCondition::neumann()};
  for (const auto& sides : geometries) {
    for (const auto& bc : bcs) {
      for (double gamma : {0.0, 1.0}) {
        for (double lambda : {50.0, 137.5, 500.0}) {
          const SpectralQuery q(gamma, lambda, bc, Cuboid(sides));
          const double got = riesz_mean_cuboid(q).value;
          const double want = brute_force_riesz(gamma, lambda, bc, sides);
          if (want == 0.0) {
            CHECK(got == 0.0);
          } else {
            CHECK(got == doctest::Approx(want).epsilon(1e-10));
          }
        }
      }
    }
  }
}

TEST_CASE("recursion axis choice does not change the value") {
  const SpectralQuery q(1.0, 200.0, BoundaryCondition::robin(1.0), Cuboid({0.5, 1.0, 2.0}));
  const double base = riesz_mean_cuboid(q).value;
  for (int axis = 0; axis < 3; ++axis) {
    RieszOptions opts;
    opts.axis = axis;
    CHECK(riesz_mean_cuboid(q, opts).value == doctest::Approx(base).epsilon(1e-10));
  }
}

TEST_CASE("monotone in lambda and in beta") {
  const Cuboid R({1.0, 1.5});
  double prev = -1.0;
  for (double lambda : {10.0, 40.0, 90.0, 160.0}) {
    const double v =
        riesz_mean_cuboid(SpectralQuery(1.0, lambda, BoundaryCondition::robin(1.0), R)).value;
    CHECK(v >= prev);
    prev = v;
  }
  prev = 1e300;
  for (double beta : {0.1, 1.0, 10.0, 100.0}) {
    const double v =
        riesz_mean_cuboid(SpectralQuery(1.0, 90.0, BoundaryCondition::robin(beta), R)).value;
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("scaling invariance of the normalized value") {
  // value / (L |R| lambda^{gamma+d/2}) is invariant under
  // (R, beta, lambda) -> (sR, beta/s, lambda/s^2); the prefactor cancels in
  // the ratio of the two evaluations.
  const double gamma = 1.0, lambda = 120.0, beta = 2.0, s = 1.7;
  const Cuboid R({0.8, 1.2});
  const double v1 =
      riesz_mean_cuboid(SpectralQuery(gamma, lambda, BoundaryCondition::robin(beta), R)).value;
  const double v2 = riesz_mean_cuboid(SpectralQuery(gamma, lambda / (s * s),
                                                    BoundaryCondition::robin(beta / s),
                                                    R.scaled(s)))
                        .value;
  const double n1 = v1 / (R.volume() * std::pow(lambda, gamma + 1.0));
  const double n2 = v2 / (R.scaled(s).volume() * std::pow(lambda / (s * s), gamma + 1.0));
  CHECK(n1 == doctest::Approx(n2).epsilon(1e-11));
}

TEST_CASE("a priori bound dominates") {
  // Concrete 1-d counting case: bound = pi + 1 at lambda = pi^2.
  const SpectralQuery c(0.0, pi * pi, BoundaryCondition::dirichlet(), Cuboid::interval(1.0));
  CHECK(apriori_bound(c) == doctest::Approx(pi + 1.0).epsilon(1e-14));
  CHECK(apriori_bound(c) >= riesz_mean_interval(c).value);

  const std::vector<SpectralQuery> queries = {
      SpectralQuery(1.0, 100.0, BoundaryCondition::dirichlet(), Cuboid::cube(2)),
      SpectralQuery(1.0, 100.0, BoundaryCondition::neumann(), Cuboid::cube(2)),
      SpectralQuery(0.0, 333.0, BoundaryCondition::robin(0.7), Cuboid({0.4, 2.5})),
      SpectralQuery(2.0, 80.0, BoundaryCondition::robin(3.0), Cuboid({0.9, 1.0, 1.2})),
  };
  for (const auto& q : queries) CHECK(apriori_bound(q) >= riesz_mean_cuboid(q).value);
}

TEST_CASE("term cap raises a capacity error") {
  RieszOptions opts;
  opts.term_cap = 10;
  const SpectralQuery q(1.0, 500.0, BoundaryCondition::dirichlet(), Cuboid::cube(2));
  CHECK_THROWS_AS(riesz_mean_cuboid(q, opts), capacity_error);
}

TEST_CASE("Aizenman-Lieb lift agrees with direct enumeration") {
  SUBCASE("gamma 1 -> 2, Dirichlet") {
    const auto r = aizenman_lieb_lift(1.0, 2.0, q1(1.0, 100.0, BoundaryCondition::dirichlet()));
    CHECK(r.direct > 0.0);
    CHECK(r.lifted == doctest::Approx(r.direct).epsilon(1e-8));
  }
  SUBCASE("empty spectrum below lambda") {
    const auto r = aizenman_lieb_lift(1.0, 2.0, q1(1.0, 2.0, BoundaryCondition::dirichlet()));
    CHECK(r.lifted == 0.0);
    CHECK(r.direct == 0.0);
  }
  SUBCASE("fractional orders, Robin") {
    const auto r = aizenman_lieb_lift(0.5, 1.5, q1(0.5, 50.0, BoundaryCondition::robin(1.0)));
    CHECK(r.lifted == doctest::Approx(r.direct).epsilon(1e-6));
  }
  SUBCASE("counting function lift") {
    const auto r = aizenman_lieb_lift(0.0, 1.0, q1(0.0, 75.0, BoundaryCondition::dirichlet()));
    CHECK(r.lifted == doctest::Approx(r.direct).epsilon(1e-8));
  }
  SUBCASE("coupled flag freezes beta sqrt(lambda)") {
    const auto r =
        aizenman_lieb_lift(1.0, 2.0, q1(1.0, 60.0, BoundaryCondition::robin(0.5)), true);
    const double direct = riesz_mean_interval(q1(
        2.0, 60.0, BoundaryCondition::robin(0.5 * std::sqrt(60.0)))).value;
    CHECK(r.direct == doctest::Approx(direct).epsilon(1e-13));
    CHECK(r.lifted == doctest::Approx(r.direct).epsilon(1e-8));
  }
}

TEST_CASE("query validation") {
  CHECK_THROWS_AS(SpectralQuery(-1.0, 10.0, BoundaryCondition::dirichlet(), Cuboid::cube(2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(SpectralQuery(1.0, -10.0, BoundaryCondition::dirichlet(), Cuboid::cube(2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(Cuboid({1.0, -1.0}), std::invalid_argument);
  CHECK_THROWS_AS(riesz_mean_interval(SpectralQuery(1.0, 10.0, BoundaryCondition::dirichlet(),
                                                    Cuboid::cube(2))),
                  std::invalid_argument);
}
