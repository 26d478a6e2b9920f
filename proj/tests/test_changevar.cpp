#include "doctest.h"

#include "rellich/changevar.hpp"
#include "rellich/constants.hpp"
#include "rellich/harmonics.hpp"

#include <cmath>
#include <stdexcept>

using namespace rellich;

TEST_CASE("substitution maps: endpoints and the X relation") {
  for (int n : {5, 6, 7, 8, 9}) {
    SubstitutionMaps maps(n, Rational(n) / (2 * (n - 1)));
    CHECK(maps.g(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(maps.relation_residual(100) < 1e-12);
    for (double r : {0.1, 0.5, 0.9}) {
      double nu = n / (2.0 * (n - 1));
      CHECK(x_of_r(maps.g(r)) ==
            doctest::Approx(std::pow(x_of_r(r), nu)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(SubstitutionMaps(4, rat(1)), std::domain_error);
  SubstitutionMaps m5(5, rat(5, 8));
  CHECK_THROWS_AS(m5.g(0.0), std::domain_error);
  CHECK_THROWS_AS(m5.g(1.5), std::domain_error);
}

TEST_CASE("g inverse round trip") {
  SubstitutionMaps maps(5, rat(5, 8));
  for (double r : {0.05, 0.2, 0.5, 0.8, 0.99}) {
    CHECK(maps.g_inverse(maps.g(r)) == doctest::Approx(r).epsilon(1e-13));
  }
}

TEST_CASE("derivative stacks match finite differences") {
  for (int n : {5, 6, 7}) {
    SubstitutionMaps maps(n, Rational(n) / (2 * (n - 1)));
    CHECK(maps.max_fd_residual(20) < 1e-6);
  }
  SubstitutionMaps off_beta(5, rat(5, 8));
  CHECK(off_beta.max_fd_residual(20) < 1e-6);
}

TEST_CASE("sphere-split identity for weighted bilaplacian energies") {
  WeightedQuadrature quad;
  SUBCASE("theta = 0 reduces to the mode-diagonal form") {
    auto f = poly_bump(2, {1.0, -0.4});
    double res = validate_sphere_split(5, 0.0, mode(5, 0), f, quad);
    CHECK(res < 1e-8);
    double direct = integrate(
        [&](double r) {
          if (r <= 0.0) return 0.0;
          auto v = f(r);
          double lap = v[2] + 4.0 * v[1] / r;
          return lap * lap * std::pow(r, 4.0);
        },
        0.0, 0.0, quad);
    CHECK(direct == doctest::Approx(bilap_form(mode(5, 0), f, quad)).epsilon(1e-8));
  }
  SUBCASE("theta = 4 - n with a nonradial mode") {
    auto f = poly_bump(2, {1.0, 0.7, -0.3});
    CHECK(validate_sphere_split(5, -1.0, mode(5, 1), f, quad) < 1e-6);
    CHECK(validate_sphere_split(7, -3.0, mode(7, 1), f, quad) < 1e-6);
  }
  SUBCASE("zero profile gives zero on both sides") {
    auto z = poly_bump(2, {0.0});
    CHECK(validate_sphere_split(5, 0.0, mode(5, 0), z, quad) == 0.0);
  }
}

TEST_CASE("power substitution u(r) = y(r^beta)") {
  WeightedQuadrature quad;
  auto y = poly_bump(2, {1.0, -1.0});  // t^2 (1-t)^3
  SUBCASE("n = 5, beta = 5/8") {
    auto res = validate_power_substitution(5, rat(5, 8), y, quad);
    CHECK(res.radial_residual < 1e-6);
    CHECK(res.measure_residual < 1e-6);
  }
  SUBCASE("beta = 1 is the identity substitution") {
    auto res = validate_power_substitution(5, rat(1), y, quad);
    CHECK(res.radial_residual < 1e-8);
    CHECK(res.measure_residual < 1e-12);
  }
  SUBCASE("zero profile") {
    auto z = poly_bump(2, {0.0});
    auto res = validate_power_substitution(5, rat(5, 8), z, quad);
    CHECK(res.radial_residual == 0.0);
  }
}

TEST_CASE("weighted substitution v = alpha(r) w(g(r))") {
  WeightedQuadrature quad;
  auto w = poly_bump(2, {1.0, -1.0});  // t^2 (1-t)^3
  SUBCASE("n = 5, first mode") {
    auto res = validate_weighted_substitution(5, mode(5, 1), w, quad);
    CHECK(res.radial_residual < 1e-5);
    CHECK(res.nonradial_residual < 1e-5);
    CHECK(res.measure_residual < 1e-5);
  }
  SUBCASE("n = 6, second mode") {
    auto res = validate_weighted_substitution(6, mode(6, 2), w, quad);
    CHECK(res.radial_residual < 1e-5);
    CHECK(res.nonradial_residual < 1e-5);
    CHECK(res.measure_residual < 1e-5);
  }
  SUBCASE("residuals decrease under quadrature refinement") {
    WeightedQuadrature coarse(10, 3, 0.55);
    auto res_coarse = validate_weighted_substitution(5, mode(5, 1), w, coarse);
    auto res_fine = validate_weighted_substitution(5, mode(5, 1), w, quad);
    CHECK(res_coarse.radial_residual > 1e-6);  // visibly off at this resolution
    CHECK(res_fine.radial_residual < res_coarse.radial_residual);
  }
}

TEST_CASE("profile transforms round trip") {
  auto corpus = random_profile_corpus(2, 10, 4242);
  for (const auto& u : corpus) {
    auto v = u_to_v(5, u);
    auto back = v_to_u(5, v);
    double worst = 0.0;
    for (double r : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      auto a = u(r), b = back(r);
      for (int j = 0; j < 3; ++j)
        worst = std::max(worst, std::abs(a[j] - b[j]));
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("second substitution round trip v -> w -> v") {
  SubstitutionMaps maps(5, Rational(5) / 8);
  auto corpus = random_profile_corpus(2, 5, 31337);
  for (const auto& vbase : corpus) {
    auto w = v_to_w(maps, vbase);
    auto back = w_to_v(maps, w);
    double worst = 0.0;
    for (double r : {0.2, 0.4, 0.6, 0.8}) {
      auto a = vbase(r), b = back(r);
      for (int j = 0; j < 3; ++j)
        worst = std::max(worst, std::abs(a[j] - b[j]) /
                                    std::max(1.0, std::abs(a[j])));
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("singular prefactor removal") {
  // u = r^{-(n-4)/2} * smooth maps to v = smooth
  int n = 7;
  RadialProfile u;
  u.vanishing_order = 2;
  u.support_end = 1.0;
  u.eval = [n](double r) -> std::array<double, 3> {
    double a = -0.5 * (n - 4);
    double s = (1.0 - r) * (1.0 - r);
    double ds = -2.0 * (1.0 - r);
    double ra = std::pow(r, a);
    return {ra * s, ra * (ds + a * s / r),
            ra * (2.0 + 2.0 * a * ds / r + a * (a - 1) * s / (r * r))};
  };
  auto v = u_to_v(n, u);
  for (double r : {0.2, 0.5, 0.8})
    CHECK(v(r)[0] == doctest::Approx((1 - r) * (1 - r)).epsilon(1e-12));
}

TEST_CASE("J[v] equals the direct Rellich gap for radial profiles") {
  WeightedQuadrature quad;
  for (int n : {5, 6}) {
    auto corpus = random_profile_corpus(2, 5, 999 + n);
    for (const auto& u : corpus) {
      auto v = u_to_v(n, u);
      double lhs = rellich_gap_radial(n, u, quad);
      double rhs = j_radial(n, v, quad);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-5));
    }
  }
}
