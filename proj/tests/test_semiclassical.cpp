#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "robin/semiclassical.hpp"
#include "robin/special.hpp"

using namespace robin;

TEST_CASE("semiclassical constants") {
  CHECK(lsc(0.0, 1) == doctest::Approx(1.0 / pi).epsilon(1e-15));
  CHECK(lsc(1.0, 1) == doctest::Approx(2.0 / (3.0 * pi)).epsilon(1e-15));
  CHECK(lsc(0.0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(lsc(7.5, 0) == doctest::Approx(1.0).epsilon(1e-15));

  // Product identity lsc(g,1) lsc(g+1/2,d-1) = lsc(g,d).
  for (double g : {0.0, 0.5, 1.0, 2.5, 10.0}) {
    for (int d : {1, 2, 3, 5}) {
      CHECK(lsc(g, 1) * lsc(g + 0.5, d - 1) == doctest::Approx(lsc(g, d)).epsilon(1e-13));
    }
  }
}

TEST_CASE("L constant closed forms") {
  // gamma + d/2 = 0: (4/pi) arctan(1/beta) - 1, zero at beta = 1.
  CHECK(l_const(0.0, 0, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(l_const(0.0, 0, 0.3) ==
        doctest::Approx(4.0 / pi * std::atan(1.0 / 0.3) - 1.0).epsilon(1e-14));
  // gamma + d/2 = 1/2: closed form 2 sqrt(1+b^2) - 2b - 1, zero at beta = 3/4.
  auto half_form = [](double b) { return 2.0 * std::sqrt(1.0 + b * b) - 2.0 * b - 1.0; };
  for (double b : {0.2, 0.75, 1.0, 4.0}) {
    CHECK(l_const(0.5, 0, b) == doctest::Approx(half_form(b)).epsilon(1e-11));
    CHECK(l_const(0.0, 1, b) == doctest::Approx(half_form(b) * lsc(0.0, 1)).epsilon(1e-11));
  }
  CHECK(std::abs(l_const(0.5, 0, 0.75)) <= 1e-12);
}

TEST_CASE("the two integral representations agree") {
  for (double a : {0.5, 1.0, 1.5, 2.0, 5.0}) {
    for (double beta : {0.1, 0.5, 1.0, 2.0, 10.0}) {
      // Realize a as gamma + d/2 both with d = 0 and with d = 1.
      const double v0 = l_const(a, 0, beta, LForm::density);
      const double v0_alt = l_const(a, 0, beta, LForm::arctan);
      CHECK(v0 == doctest::Approx(v0_alt).epsilon(1e-10));
      const double v1 = l_const(a - 0.5, 1, beta, LForm::density);
      const double v1_alt = l_const(a - 0.5, 1, beta, LForm::arctan);
      CHECK(v1 == doctest::Approx(v1_alt).epsilon(1e-10));
      // Same a means the same bracketed factor; only the lsc scale differs.
      CHECK(v0 / lsc(a, 0) == doctest::Approx(v1 / lsc(a - 0.5, 1)).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(l_const(0.0, 0, 1.0, LForm::arctan), std::invalid_argument);
}

TEST_CASE("product identity of the L coefficients") {
  // L_{g,d-1}(beta) = lsc(g,1) L_{g+1/2,d-2}(beta): both sides share the
  // bracketed integral at a = g + (d-1)/2 and the lsc factors multiply.
  for (double g : {0.5, 1.0, 2.0}) {
    for (int d : {2, 3, 4}) {
      for (double beta : {0.3, 1.0, 5.0}) {
        CHECK(l_const(g, d - 1, beta) ==
              doctest::Approx(lsc(g, 1) * l_const(g + 0.5, d - 2, beta)).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("L is decreasing in beta with limits +-lsc") {
  for (double g : {0.5, 1.0, 3.0}) {
    double prev = 1e300;
    for (double beta : {1e-8, 0.1, 0.5, 1.0, 2.0, 10.0, 1e8}) {
      const double v = l_const(g, 0, beta);
      CHECK(v < prev);
      prev = v;
    }
    CHECK(std::abs(l_const(g, 0, 1e-8) - lsc(g, 0)) <= 1e-6);
    CHECK(std::abs(l_const(g, 0, 1e8) + lsc(g, 0)) <= 1e-6);
  }
  // Small-beta limit example at gamma = 1.
  CHECK(std::abs(l_const(1.0, 0, 1e-8) - lsc(1.0, 0)) <= 1e-6);
}

TEST_CASE("beta_w closed-form thresholds") {
  const auto b00 = beta_w(0.0, 0);
  CHECK(std::abs(b00.value - 1.0) <= 1e-10);
  CHECK(b00.bracket.contains(b00.value));
  CHECK(b00.bracket.width() <= 1e-10 * 1.0001);

  const auto b12 = beta_w(0.5, 0);
  CHECK(std::abs(b12.value - 0.75) <= 1e-10);

  // Depends on gamma and d only through gamma + d/2.
  const auto b01 = beta_w(0.0, 1);
  CHECK(std::abs(b01.value - 0.75) <= 1e-9);
  CHECK(beta_w(1.0, 2).value == doctest::Approx(beta_w(2.0, 0).value).epsilon(1e-9));

  // Frozen reference for the gamma = 1 threshold (1e-30 bisection oracle).
  CHECK(beta_w(1.0, 0).value == doctest::Approx(0.62118445991912533).epsilon(1e-9));
}

TEST_CASE("beta_w is decreasing in gamma and scales toward c*") {
  double prev = 1e300;
  for (double g : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    const double v = beta_w(g, 0).value;
    CHECK(v < prev);
    prev = v;
  }
  const double cs = c_star();
  double prev_scaled = 0.0;
  for (double g : {10.0, 100.0, 1000.0}) {
    const double scaled = beta_w(g, 0).value * std::sqrt(g);
    CHECK(scaled > prev_scaled);  // approaches c* from below
    CHECK(scaled < cs);
    prev_scaled = scaled;
  }
}

TEST_CASE("c_star solves its defining equation") {
  const double cs = c_star();
  CHECK(std::abs(cs - 0.769) <= 1e-3);
  CHECK(std::abs(2.0 * erfcx(cs) - 1.0) <= 1e-11);
  // Frozen 30-digit oracle value: 0.769079771061314205239162150746.
  CHECK(cs == doctest::Approx(0.7690797710613142).epsilon(1e-11));
}

TEST_CASE("erfc accuracy") {
  CHECK(robin::erfc(0.0) == 1.0);
  // Frozen 30-digit oracle value of erfc(1): 0.157299207050285130658779364917.
  CHECK(robin::erfc(1.0) == doctest::Approx(0.15729920705028513).epsilon(1e-14));
  // Cross-check against the C library implementation over [0, 10].
  for (double x = 0.0; x <= 10.0; x += 0.03125) {
    const double want = std::erfc(x);
    CHECK(std::abs(robin::erfc(x) - want) <= 1e-14 * want);
  }
  // The scaled form is monotone decreasing, as is 2 e^{x^2} erfc(x).
  double prev = 1e300;
  for (double x = 0.0; x <= 6.0; x += 0.125) {
    const double v = 2.0 * erfcx(x);
    CHECK(v < prev);
    prev = v;
  }
  CHECK_THROWS_AS(erfcx(-0.5), std::invalid_argument);
}

TEST_CASE("two-term prediction on the interval") {
  // Coupled regime: normalized remainder stays bounded along a lambda ladder.
  double worst = 0.0;
  for (double lambda : {1e2, 1e3, 1e4, 1e5, 1e6}) {
    const SpectralQuery q(1.0, lambda, BoundaryCondition::robin(1.0), Cuboid::interval(1.0));
    const WeylExpansion w = two_term_prediction(q, true);
    CHECK(w.remainder == doctest::Approx(w.value - w.leading - w.second).epsilon(1e-12));
    worst = std::max(worst, std::abs(w.normalized_remainder));
  }
  CHECK(worst < 10.0);

  // gamma = 0 keeps only the leading term; the counting error is at most 1.
  for (double lambda : {7.0, 100.0, 12345.0}) {
    const SpectralQuery q(0.0, lambda, BoundaryCondition::dirichlet(), Cuboid::interval(1.0));
    const WeylExpansion w = two_term_prediction(q);
    CHECK(w.second == 0.0);
    CHECK(std::abs(w.remainder) <= 1.0);
  }
}

TEST_CASE("two-term prediction on the square") {
  const SpectralQuery q(1.0, 1e4, BoundaryCondition::dirichlet(), Cuboid::cube(2));
  const WeylExpansion w = two_term_prediction(q);
  CHECK(w.second < 0.0);  // Dirichlet second term carries -lsc
  CHECK(std::abs(w.remainder) < 0.2 * std::abs(w.second));
  CHECK(w.leading == doctest::Approx(lsc(1.0, 2) * 1e8).epsilon(1e-12));
}

TEST_CASE("two-term prediction in three dimensions") {
  const SpectralQuery q(1.0, 2000.0, BoundaryCondition::robin(5.0), Cuboid({0.8, 1.0, 1.25}));
  const WeylExpansion w = two_term_prediction(q);
  const Cuboid& R = q.geometry;
  CHECK(w.leading ==
        doctest::Approx(lsc(1.0, 3) * R.volume() * std::pow(2000.0, 2.5)).epsilon(1e-12));
  const double coeff = l_const(1.0, 2, 5.0 / std::sqrt(2000.0));
  CHECK(w.second ==
        doctest::Approx(0.25 * coeff * R.surface() * std::pow(2000.0, 2.0)).epsilon(1e-10));
  CHECK(std::abs(w.normalized_remainder) < 10.0);
}
