#include "doctest.h"

#include "rellich/mellin.hpp"

#include <cmath>
#include <stdexcept>

using namespace rellich;

TEST_CASE("gradient symbol: pinned rational values") {
  CHECK(grad_symbol({3, 1, 0.0}) == 25.0 / 36.0);
  CHECK(grad_symbol({3, 2, 0.0}) == 441.0 / 100.0);
  CHECK(grad_symbol({4, 2, 0.0}) == 8.0);
  CHECK(grad_symbol({4, 1, 0.0}) == 3.0);
  CHECK(grad_symbol({5, 0, 0.0}) == 25.0 / 4.0);
  CHECK_THROWS_AS(grad_symbol({4, 0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(grad_symbol({2, 1, 0.0}), std::domain_error);
}

TEST_CASE("potential symbol: pinned values and growth") {
  CHECK(rellich_symbol(5, 0.0) == 25.0 / 16.0);
  CHECK(rellich_symbol(6, 0.0) == 9.0);
  CHECK_THROWS_AS(rellich_symbol(4, 0.0), std::domain_error);
  // tau^4 growth: monotone beyond a fixed threshold
  double prev = rellich_symbol(5, 3.0);
  for (double tau = 4.0; tau <= 40.0; tau += 4.0) {
    double v = rellich_symbol(5, tau);
    CHECK(v > prev);
    CHECK(v > 0.5 * std::pow(tau, 4.0));
    prev = v;
  }
}

TEST_CASE("tau-minimality at zero for the n = 3 breaking mode") {
  // analytically x^2 + (9/2) x + 209/16 > 0, so Q increases in tau^2
  double q0 = grad_symbol({3, 1, 0.0});
  for (int i = 1; i <= 60; ++i) {
    double tau = 0.05 * i;
    CHECK(grad_symbol({3, 1, tau}) > q0);
  }
}

TEST_CASE("symbol certification by enveloped-wave quadrature") {
  WeightedQuadrature quad;
  for (int n : {3, 4, 5, 6}) {
    for (int k : {0, 1, 2}) {
      for (double tau : {0.0, 0.5, 1.0}) {
        if (n == 4 && k == 0 && tau == 0.0) continue;  // singular symbol point
        double res = certify_symbol({n, k, tau}, 40.0, quad);
        CAPTURE(n);
        CAPTURE(k);
        CAPTURE(tau);
        CHECK(res < 1e-2);
      }
    }
  }
}

TEST_CASE("certification tightens with the envelope width") {
  WeightedQuadrature quad;
  double narrow = certify_symbol({3, 1, 0.0}, 20.0, quad);
  double wide = certify_symbol({3, 1, 0.0}, 40.0, quad);
  CHECK(wide < narrow);
  double n5 = certify_symbol({5, 0, 1.0}, 40.0, quad);
  CHECK(n5 < 1e-2);
}

TEST_CASE("global minimization over modes reproduces the best constants") {
  auto m3 = minimize_modes(3);
  CHECK(m3.k_star == 1);
  CHECK(std::abs(m3.value - 25.0 / 36.0) < 1e-10);
  CHECK(m3.tail_monotone);

  auto m4 = minimize_modes(4);
  CHECK(m4.k_star == 1);
  CHECK(std::abs(m4.value - 3.0) < 1e-10);

  auto m7 = minimize_modes(7);
  CHECK(m7.k_star == 0);
  CHECK(std::abs(m7.value - 49.0 / 4.0) < 1e-10);

  CHECK_THROWS_AS(minimize_modes(3, 1), std::invalid_argument);
}

TEST_CASE("symmetry breaking across dimensions") {
  for (int n : {3, 4}) CHECK(minimize_modes(n).k_star == 1);
  for (int n : {5, 6, 7, 8, 9}) CHECK(minimize_modes(n).k_star == 0);
}

TEST_CASE("per-mode gap constant") {
  double c3 = mode_gap_constant(3);
  CHECK(c3 == doctest::Approx(1.0 - (25.0 / 36.0) / (441.0 / 100.0)).epsilon(1e-10));
  CHECK(c3 == doctest::Approx(0.84254).epsilon(1e-4));
  double c4 = mode_gap_constant(4);
  CHECK(c4 == doctest::Approx(5.0 / 8.0).epsilon(1e-12));
  CHECK(c3 > 0.0);
  CHECK(c4 > 0.0);
  // truncation insensitivity: the k >= 2 minimum sits at k = 2
  CHECK(mode_gap_constant(3, 10) == doctest::Approx(mode_gap_constant(3, 50)).epsilon(1e-14));
  CHECK_THROWS_AS(mode_gap_constant(5), std::domain_error);
}
