#include "doctest.h"

#include "rellich/constants.hpp"
#include "rellich/quadrature.hpp"

#include <cmath>

using namespace rellich;

TEST_CASE("logarithmic weight: closed values and domain") {
  CHECK(x_of_r(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(x_of_r(std::exp(-1.0)) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(x_of_r(std::exp(-9.0)) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK_THROWS_AS(x_of_r(0.0), std::domain_error);
  CHECK_THROWS_AS(x_of_r(-0.5), std::domain_error);
  CHECK_THROWS_AS(x_of_r(1.5), std::domain_error);
}

TEST_CASE("logarithmic weight: strictly increasing") {
  double prev = 0.0;
  for (int i = 1; i <= 60; ++i) {
    double r = std::exp(-60.0 + i);
    double x = x_of_r(r);
    CHECK(x > prev);
    prev = x;
  }
}

TEST_CASE("best-constant table") {
  CHECK(c_n_exact(3) == rat(25, 36));
  CHECK(c_n_exact(4) == rat(3));
  CHECK(c_n_exact(5) == rat(25, 4));
  CHECK(c_n_exact(9) == rat(81, 4));
  CHECK_THROWS_AS(c_n_exact(2), std::domain_error);
}

TEST_CASE("exact bundle fields at n = 5") {
  auto b = constants(5, rat(5, 8));
  CHECK(*b.rellich_u == rat(25, 16));
  CHECK(*b.gamma1 == rat(15625, 65536));
  CHECK(*b.A == rat(319, 25));
  CHECK(*b.beta_n_sq == rat(325, 1027));
  CHECK(*b.s == rat(4, 5));  // (5-4)/(2*5/8)
  CHECK(to_double(*b.beta_n_sq) < 0.625 * 0.625);
}

TEST_CASE("bundle rejects bad input and hides n>=5 fields below 5") {
  CHECK_THROWS_AS(constants(2, rat(1)), std::domain_error);
  CHECK_THROWS_AS(constants(5, rat(0)), std::domain_error);
  auto b3 = constants(3, rat(1));
  CHECK(b3.c_n == rat(25, 36));
  CHECK_FALSE(b3.rellich_u.has_value());
  CHECK_FALSE(b3.gamma1.has_value());
}

TEST_CASE("gamma constants positive; beta_n below the chosen beta") {
  for (int n = 5; n <= 12; ++n) {
    CHECK(gamma1_exact(n) > 0);
    CHECK(gamma2_exact(n) > 0);
    CHECK(gamma3_exact(n) > 0);
    Rational chosen = Rational(n) / (2 * (n - 1));
    CHECK(beta_n_sq_exact(n) < chosen * chosen);
  }
}

TEST_CASE("first-order Sobolev constant against the classical closed form") {
  auto s = sobolev_constants(3);
  double classical = 3.0 * std::pow(M_PI / 2.0, 4.0 / 3.0);
  CHECK(s.S1n == doctest::Approx(classical).epsilon(1e-13));
  CHECK(s.S1n == doctest::Approx(5.4779).epsilon(1e-4));
  CHECK_THROWS_AS(sobolev_constants(2), std::domain_error);
}

TEST_CASE("second-order Sobolev constant: both exponent readings") {
  auto s = sobolev_constants(5);
  CHECK(s.S2n == doctest::Approx(9.754e-3).epsilon(2e-3));
  CHECK(s.S2n_alternate == doctest::Approx(102.35).epsilon(1e-3));
}

TEST_CASE("weighted quadrature: node structure") {
  WeightedQuadrature quad;
  auto main = quad.main_nodes();
  REQUIRE(main.size() == size_t(60 * 16));
  for (size_t i = 0; i < main.size(); ++i) {
    CHECK(main[i] > 0.0);
    CHECK(main[i] < 1.0);
    if (i > 0) CHECK(main[i] > main[i - 1]);
  }
}

TEST_CASE("weighted quadrature: pinned examples") {
  WeightedQuadrature quad;
  CHECK(integrate([](double) { return 1.0; }, 1.0, 0.0, quad) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(integrate([](double) { return 1.0; }, -1.0, 3.0, quad) ==
        doctest::Approx(0.5).epsilon(1e-10));
  CHECK(integrate([](double) { return 0.0; }, -1.0, 3.0, quad) == 0.0);
  CHECK_THROWS(integrate([](double) { return std::nan(""); }, 0.0, 0.0, quad));
}

TEST_CASE("weighted quadrature: X-moment antiderivative law") {
  WeightedQuadrature quad;
  for (double sigma : {1.5, 2.0, 3.0, 5.0}) {
    double v = integrate([](double) { return 1.0; }, -1.0, sigma, quad);
    CHECK(v == doctest::Approx(1.0 / (sigma - 1.0)).epsilon(1e-8));
  }
}

TEST_CASE("weighted quadrature: refinement consistency") {
  WeightedQuadrature coarse;
  WeightedQuadrature fine(120, 16, std::sqrt(0.7), 256, 8, 44.0);
  auto f = [](double r) { return std::cos(3.0 * r); };
  double a = integrate(f, -0.5, 2.0, coarse);
  double b = integrate(f, -0.5, 2.0, fine);
  CHECK(std::abs(a - b) < 1e-9 * std::abs(b) + 1e-12);
}
