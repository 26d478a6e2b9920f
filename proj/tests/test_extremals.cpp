#include "doctest.h"

#include "rellich/constants.hpp"
#include "rellich/extremals.hpp"

#include <cmath>
#include <stdexcept>

using namespace rellich;

TEST_CASE("sphere areas") {
  CHECK(sphere_area(3) == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
  CHECK(sphere_area(4) == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-14));
}

TEST_CASE("bubble resolves the Gamma-ratio exponent") {
  for (int n : {5, 6}) {
    auto res = resolve_s2n(n);
    CAPTURE(n);
    CHECK_FALSE(res.printed_exponent_selected);  // the 4/n reading wins
    CHECK(res.mismatch_selected < 1e-2);
    CHECK(res.mismatch_rejected > 10.0);
    CHECK(res.resolved == doctest::Approx(sobolev_constants(n).S2n_alternate));
    // quotient sweep decreases toward the resolved constant
    for (size_t i = 1; i < res.sweep.size(); ++i)
      CHECK(res.sweep[i].second < res.sweep[i - 1].second);
    CHECK(res.sweep.back().second > res.resolved);
  }
}

TEST_CASE("bubble quotient sandwich basics") {
  BubbleParams p;
  p.n = 5;
  p.lambda = 1e3;
  p.rho = 0.05;
  auto q = bubble_quotient(p);
  CHECK(q.lower <= q.upper);
  CHECK(q.lower > 0.0);
  // the quotient always sits above the true constant
  CHECK(q.lower > resolve_s2n(5).resolved);

  // doubling lambda tightens the sandwich
  BubbleParams p2 = p;
  p2.lambda = 2e3;
  auto q2 = bubble_quotient(p2);
  CHECK(q2.upper - q2.lower < q.upper - q.lower);

  BubbleParams bad = p;
  bad.rho = 0.3;
  CHECK_THROWS_AS(bubble_quotient(bad), std::invalid_argument);
  bad = p;
  bad.lambda = 10.0;
  CHECK_THROWS_AS(bubble_quotient(bad), std::invalid_argument);
}

TEST_CASE("eps-delta profile matches the displayed derivative formulas") {
  EpsDeltaParams p;
  p.eps = 0.03;
  p.delta = 0.07;
  auto f = eps_delta_profile(p);
  SUBCASE("pure power-weight factor where psi = 1") {
    for (double r : {0.05, 0.2, 0.45}) {
      double X = x_of_r(r);
      double f0 = std::pow(r, 0.5 + p.eps) * std::pow(X, -0.5 + p.delta);
      CHECK(f(r)[0] == doctest::Approx(f0).epsilon(1e-13));
      // f' display: r^{-1/2+eps} ((1/2+eps) X^{-1/2+d} + (-1/2+d) X^{1/2+d})
      double fp = std::pow(r, -0.5 + p.eps) *
                  ((0.5 + p.eps) * std::pow(X, -0.5 + p.delta) +
                   (-0.5 + p.delta) * std::pow(X, 0.5 + p.delta));
      CHECK(f(r)[1] == doctest::Approx(fp).epsilon(1e-13));
      double fpp = std::pow(r, -1.5 + p.eps) *
                   ((p.eps * p.eps - 0.25) * std::pow(X, -0.5 + p.delta) +
                    2.0 * p.eps * (-0.5 + p.delta) * std::pow(X, 0.5 + p.delta) +
                    (p.delta * p.delta - 0.25) * std::pow(X, 1.5 + p.delta));
      CHECK(f(r)[2] == doctest::Approx(fpp).epsilon(1e-13));
    }
  }
  SUBCASE("derivatives agree with finite differences") {
    double worst1 = 0, worst2 = 0;
    for (int i = 1; i <= 20; ++i) {
      double r = 0.02 + 0.45 * i / 21.0;
      double h = 1e-5 * r;
      auto m2 = f(r - 2 * h), m1 = f(r - h), q1 = f(r + h), q2 = f(r + 2 * h);
      auto v = f(r);
      double fd1 = (m2[0] - 8 * m1[0] + 8 * q1[0] - q2[0]) / (12 * h);
      double fd2 = (m2[1] - 8 * m1[1] + 8 * q1[1] - q2[1]) / (12 * h);
      worst1 = std::max(worst1, std::abs(fd1 - v[1]) / std::abs(v[1]));
      worst2 = std::max(worst2, std::abs(fd2 - v[2]) / std::abs(v[2]));
    }
    CHECK(worst1 < 1e-10);
    CHECK(worst2 < 1e-8);
  }
  CHECK_THROWS_AS(eps_delta_profile({0.5, 0.1, 4.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(eps_delta_profile({0.01, 0.7, 4.0, 0.5}), std::invalid_argument);
}

TEST_CASE("I integrals: laws in the eps -> 0 regime") {
  SUBCASE("j = 1 carries the 1/(2 eps) law") {
    for (double e : {1e-1, 1e-2, 1e-3, 1e-4}) {
      EpsDeltaParams p;
      p.eps = e;
      p.delta = 0.0;
      CHECK(std::abs(i_integral(1, p) - 0.5 / e) < 2.0);
    }
    EpsDeltaParams p;
    p.eps = 0.01;
    p.delta = 0.0;
    double v = i_integral(1, p);
    CHECK(v > 45.0);
    CHECK(v < 55.0);
  }
  SUBCASE("j = 0 carries the 1/(4 eps^2) + 1/(2 eps) law") {
    for (double e : {1e-1, 1e-2, 1e-3}) {
      EpsDeltaParams p;
      p.eps = e;
      p.delta = 0.0;
      CHECK(std::abs(i_integral(0, p) - 0.25 / (e * e) - 0.5 / e) < 2.0);
    }
  }
  SUBCASE("j = 2 grows only logarithmically") {
    for (double e : {1e-1, 1e-2, 1e-3, 1e-4}) {
      EpsDeltaParams p;
      p.eps = e;
      p.delta = 0.0;
      CHECK(std::abs(i_integral(2, p) + std::log(2.0 * e) + 0.57721566) < 2.0);
      CHECK(i_integral(2, p) < 0.5 / e);
    }
  }
  SUBCASE("j = 3, 4 stay uniformly bounded") {
    for (double e : {1e-1, 1e-3}) {
      for (double d : {1e-3, 0.1}) {
        EpsDeltaParams p;
        p.eps = e;
        p.delta = d;
        CHECK(i_integral(3, p) < 1.0);
        CHECK(i_integral(4, p) < 0.5);
      }
    }
  }
  CHECK_THROWS_AS(i_integral(5, EpsDeltaParams{}), std::invalid_argument);
}

TEST_CASE("the 2 eps I0 - (1-2delta) I1 combination stays bounded") {
  for (double d : {0.1, 0.05}) {
    for (double e : {1e-1, 1e-2, 1e-3, 1e-4, 1e-8}) {
      EpsDeltaParams p;
      p.eps = e;
      p.delta = d;
      double combo = bft_combination(p);
      CHECK(std::abs(combo) < 5.0);
      // agrees with the literal combination where it can be formed stably
      if (e >= 1e-3) {
        double literal = 2.0 * e * i_integral(0, p) - (1.0 - 2.0 * d) * i_integral(1, p);
        CHECK(combo == doctest::Approx(literal).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("Rellich remainder of the family: three routes agree") {
  // pointwise-in-r forms against the log-space assembly
  for (double e : {0.1, 0.05}) {
    EpsDeltaParams p;
    p.eps = e;
    p.delta = 0.1;
    double a = lhs_energy_forms(p);
    double b = lhs_energy_log(p);
    double c = lhs_energy_combination(p);
    CHECK(b == doctest::Approx(c).epsilon(1e-6));
    CHECK(std::abs(a - c) < 0.05 * std::abs(psi_remainder(p)));
  }
  // coefficient route against the log route below the pointwise range
  for (double e : {1e-2, 1e-3, 1e-4}) {
    EpsDeltaParams p;
    p.eps = e;
    p.delta = 0.1;
    CHECK(lhs_energy_log(p) == doctest::Approx(lhs_energy_combination(p)).epsilon(1e-6));
  }
  EpsDeltaParams low;
  low.eps = 0.01;
  CHECK_THROWS_AS(lhs_energy_forms(low), std::domain_error);
}

TEST_CASE("family energy: limit shape in eps and divergence in delta") {
  // eps -> 0 at fixed delta: LHS stays within a fixed band of (209/144) I2
  for (double e : {1e-2, 1e-4, 1e-8, 1e-16}) {
    EpsDeltaParams p;
    p.eps = e;
    p.delta = 0.1;
    double lhs = lhs_energy_combination(p);
    CHECK(std::abs(lhs - 209.0 / 144.0 * i_integral(2, p)) < 70.0);
  }
  // then delta -> 0+: the divergent part grows without bound
  double prev = -1e300;
  for (double d : {0.25, 0.1, 0.05, 0.01, 0.003, 0.001}) {
    EpsDeltaParams p;
    p.eps = 1e-24;
    p.delta = d;
    double lhs = lhs_energy_combination(p);
    CHECK(lhs > prev);
    prev = lhs;
  }
  EpsDeltaParams top, bottom;
  top.eps = bottom.eps = 1e-24;
  top.delta = 0.25;
  bottom.delta = 0.001;
  CHECK(lhs_energy_combination(bottom) > lhs_energy_combination(top) + 50.0);
}

TEST_CASE("weighted gradient norm: homogeneity, zero, route agreement") {
  WeightedQuadrature quad;
  EpsDeltaParams p;
  p.eps = 0.05;
  p.delta = 0.15;
  p.mu = 3.5;
  auto f = eps_delta_profile(p);
  double fast = weighted_grad_norm(p);
  double generic = grad6_norm(f, p.mu, quad);
  CHECK(fast == doctest::Approx(generic).epsilon(1e-5));

  auto zero = poly_bump(2, {0.0});
  CHECK(grad6_norm(zero, 4.0, quad) == 0.0);
  auto g = poly_bump(2, {1.0, -0.5});
  auto g2 = poly_bump(2, {2.0, -1.0});
  CHECK(grad6_norm(g2, 4.0, quad) ==
        doctest::Approx(4.0 * grad6_norm(g, 4.0, quad)).epsilon(1e-10));
  CHECK(grad4_norm(g2, quad) ==
        doctest::Approx(4.0 * grad4_norm(g, quad)).epsilon(1e-10));
}

TEST_CASE("optimality sweep separates mu < 4 from mu >= 4") {
  auto t35 = optimality_sweep(3.5);
  CHECK(t35.collapse_factor >= 10.0);
  CHECK(t35.min_quotient < t35.first_quotient / 10.0);

  auto t40 = optimality_sweep(4.0);
  CHECK(t40.min_quotient > 1.0);  // positive floor
  CHECK(t40.collapse_factor < 10.0);

  auto t45 = optimality_sweep(4.5);
  CHECK(t45.collapse_factor < 10.0);
  CHECK(t45.min_quotient > 1.0);
}

TEST_CASE("sweep is reproducible bit for bit") {
  auto a = optimality_sweep(3.5);
  auto b = optimality_sweep(3.5);
  REQUIRE(a.rows.size() == b.rows.size());
  for (size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].quotient == b.rows[i].quotient);
    CHECK(a.rows[i].lhs == b.rows[i].lhs);
  }
}

TEST_CASE("instance positivity of the four improved inequalities") {
  WeightedQuadrature quad;
  SUBCASE("gradient variants with the empirically calibrated constant") {
    double C3 = calibrate_constant(InstanceKind::grad_sobolev_n3, 3, 20, 101, quad);
    CHECK(C3 > 0.0);
    for (const auto& u : mode1_corpus(20, 101)) {
      double scale = grad6_norm(u, 4.0, quad);
      CHECK(instance_check(InstanceKind::grad_sobolev_n3, 3, u, 0.95 * C3, quad) >=
            -1e-8 * scale);
    }
    double C4 = calibrate_constant(InstanceKind::grad_sobolev_n4, 4, 20, 102, quad);
    CHECK(C4 > 0.0);
    for (const auto& u : mode1_corpus(20, 102)) {
      double scale = grad4_norm(u, quad);
      CHECK(instance_check(InstanceKind::grad_sobolev_n4, 4, u, 0.95 * C4, quad) >=
            -1e-8 * scale);
    }
  }
  SUBCASE("first-order inequality with the closed-form constant") {
    for (int n : {3, 4, 5}) {
      double S1 = sobolev_constants(n).S1n;
      for (const auto& u : radial_corpus(20, 700 + n)) {
        CAPTURE(n);
        CHECK(instance_check(InstanceKind::hardy_sobolev, n, u, S1, quad) >= -1e-8);
      }
    }
  }
  SUBCASE("second-order inequality with the resolved constant") {
    for (int n : {5, 6}) {
      double S2 = resolve_s2n(n).resolved;
      for (const auto& u : radial_corpus(20, 900 + n)) {
        CAPTURE(n);
        CHECK(instance_check(InstanceKind::rellich_sobolev, n, u, S2, quad) >= -1e-8);
      }
    }
  }
  SUBCASE("zero input gives zero remainder") {
    auto zero = poly_bump(2, {0.0});
    CHECK(instance_check(InstanceKind::grad_sobolev_n3, 3, zero, 1.0, quad) == 0.0);
  }
}
