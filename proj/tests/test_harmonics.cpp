#include "doctest.h"

#include "rellich/constants.hpp"
#include "rellich/harmonics.hpp"
#include "rellich/mellin.hpp"
#include "rellich/rational.hpp"

#include <cmath>

using namespace rellich;

namespace {

// Exact oracle: rational polynomials with integral_0^1 r^m dr = 1/(m+1).
struct RatPoly {
  std::vector<Rational> c;

  static RatPoly bump(int m, std::vector<Rational> q) {
    // r^m (1-r)^2 q(r)
    RatPoly p;
    p.c.assign(q.size() + m + 2, Rational(0));
    for (size_t j = 0; j < q.size(); ++j) {
      p.c[m + j] += q[j];
      p.c[m + j + 1] -= 2 * q[j];
      p.c[m + j + 2] += q[j];
    }
    return p;
  }
  RatPoly derive() const {
    RatPoly d;
    if (c.size() <= 1) return d;
    d.c.resize(c.size() - 1);
    for (size_t j = 1; j < c.size(); ++j) d.c[j - 1] = c[j] * Rational(static_cast<int>(j));
    return d;
  }
  RatPoly square() const {
    RatPoly s;
    if (c.empty()) return s;
    s.c.assign(2 * c.size() - 1, Rational(0));
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = 0; j < c.size(); ++j) s.c[i + j] += c[i] * c[j];
    return s;
  }
  // integral_0^1 r^shift p(r) dr, shift possibly negative
  Rational weighted_integral(int shift) const {
    Rational out = 0;
    for (size_t j = 0; j < c.size(); ++j) {
      int m = static_cast<int>(j) + shift;
      if (c[j] == 0) continue;
      if (m <= -1) throw std::runtime_error("divergent oracle integral");
      out += c[j] / (m + 1);
    }
    return out;
  }
};

Rational oracle_bilap(int n, std::int64_t mu, const RatPoly& f) {
  auto f1 = f.derive(), f2 = f1.derive();
  return f2.square().weighted_integral(n - 1) +
         Rational(n - 1 + 2 * mu) * f1.square().weighted_integral(n - 3) +
         Rational(2 * (n - 4) * mu + mu * mu) * f.square().weighted_integral(n - 5);
}

Rational oracle_gradhardy(int n, std::int64_t mu, const RatPoly& f) {
  auto f1 = f.derive();
  return f1.square().weighted_integral(n - 3) +
         Rational(mu) * f.square().weighted_integral(n - 5);
}

}  // namespace

TEST_CASE("mode bookkeeping") {
  auto m = mode(3, 1);
  CHECK(m.mu == 2);
  CHECK(m.d == 3);
  m = mode(3, 2);
  CHECK(m.mu == 6);
  CHECK(m.d == 5);
  for (int n : {3, 5, 9}) {
    CHECK(mode(n, 0).mu == 0);
    CHECK(mode(n, 0).d == 1);
    CHECK(mode(n, 1).d == n);
  }
  CHECK_THROWS_AS(mode(3, -1), std::domain_error);
  CHECK_THROWS_AS(mode(2, 1), std::domain_error);
}

TEST_CASE("mode eigenvalue lower bound mu_k >= n-1") {
  for (int n : {3, 4, 5, 8, 12})
    for (int k = 1; k <= 50; ++k) CHECK(mode(n, k).mu >= n - 1);
}

TEST_CASE("bilap form against the exact polynomial oracle") {
  WeightedQuadrature quad;
  // n = 5, k = 0, f = r^2 (1-r)^2
  auto f = poly_bump(2, {1.0});
  auto exact = oracle_bilap(5, 0, RatPoly::bump(2, {Rational(1)}));
  CHECK(exact == rat(16, 63));
  CHECK(bilap_form(mode(5, 0), f, quad) ==
        doctest::Approx(to_double(exact)).epsilon(1e-8));

  // a second dimension/mode combination
  auto g = poly_bump(2, {1.0, -0.5, 2.0});
  auto exact2 = oracle_bilap(6, 5, RatPoly::bump(2, {rat(1), rat(-1, 2), rat(2)}));
  CHECK(bilap_form(mode(6, 1), g, quad) ==
        doctest::Approx(to_double(exact2)).epsilon(1e-8));
}

TEST_CASE("bilap form equals the direct radial Laplacian quadrature (k = 0)") {
  WeightedQuadrature quad;
  auto f = poly_bump(2, {1.0, 0.3});
  double lemma_form = bilap_form(mode(5, 0), f, quad);
  double direct = integrate(
      [&](double r) {
        if (r <= 0.0) return 0.0;
        auto v = f(r);
        double lap = v[2] + 4.0 * v[1] / r;
        return lap * lap;
      },
      4.0, 0.0, quad);
  CHECK(lemma_form == doctest::Approx(direct).epsilon(1e-6));
}

TEST_CASE("gradhardy form: oracle, zero and homogeneity") {
  WeightedQuadrature quad;
  auto zero = poly_bump(2, {0.0});
  CHECK(gradhardy_form(mode(3, 1), zero, quad) == 0.0);
  CHECK(bilap_form(mode(3, 1), zero, quad) == 0.0);

  // n = 3, k = 1, f = r (1-r)^2; oracle gives 8/15
  auto f = poly_bump(1, {1.0});
  auto exact = oracle_gradhardy(3, 2, RatPoly::bump(1, {Rational(1)}));
  CHECK(exact == rat(8, 15));
  CHECK(gradhardy_form(mode(3, 1), f, quad) ==
        doctest::Approx(to_double(exact)).epsilon(1e-8));

  auto f2 = poly_bump(1, {2.0});
  CHECK(gradhardy_form(mode(3, 1), f2, quad) ==
        doctest::Approx(4.0 * to_double(exact)).epsilon(1e-12));
}

TEST_CASE("hardy4 form: exact Beta integral and homogeneity") {
  WeightedQuadrature quad;
  auto f = poly_bump(2, {1.0});
  // n = 5: integral_0^1 r^4 (1-r)^4 dr = 1/630
  CHECK(hardy4_form(mode(5, 0), f, quad) ==
        doctest::Approx(1.0 / 630.0).epsilon(1e-10));
  auto f2 = poly_bump(2, {2.0});
  CHECK(hardy4_form(mode(5, 0), f2, quad) ==
        doctest::Approx(4.0 / 630.0).epsilon(1e-10));
  CHECK(hardy4_form(mode(5, 0), poly_bump(2, {0.0}), quad) == 0.0);
}

TEST_CASE("vanishing-order precondition is enforced") {
  WeightedQuadrature quad;
  auto flat = poly_bump(0, {1.0});  // no vanishing at the origin
  CHECK_THROWS_AS(bilap_form(mode(5, 0), flat, quad), std::invalid_argument);
  CHECK_THROWS_AS(gradhardy_form(mode(3, 2), flat, quad), std::invalid_argument);
}

TEST_CASE("mode-diagonal assembly is additive over modes") {
  WeightedQuadrature quad;
  auto f1 = poly_bump(2, {1.0, 0.5});
  auto f2 = poly_bump(2, {-0.25, 1.0});
  std::vector<std::pair<ModeSpec, RadialProfile>> both = {{mode(3, 1), f1},
                                                          {mode(3, 2), f2}};
  double sum = gradient_rellich_remainder(3, both, quad);
  double parts = gradient_rellich_remainder(3, {{mode(3, 1), f1}}, quad) +
                 gradient_rellich_remainder(3, {{mode(3, 2), f2}}, quad);
  CHECK(sum == doctest::Approx(parts).epsilon(1e-12));
}

TEST_CASE("gradient Rellich remainder: pinned example and sign") {
  WeightedQuadrature quad;
  auto f = poly_bump(1, {1.0});
  double rem = gradient_rellich_remainder(3, {{mode(3, 1), f}}, quad);
  double check = bilap_form(mode(3, 1), f, quad) -
                 25.0 / 36.0 * gradhardy_form(mode(3, 1), f, quad);
  CHECK(rem == doctest::Approx(check).epsilon(1e-12));
  CHECK(rem > 0.0);
  CHECK(gradient_rellich_remainder(3, {}, quad) == 0.0);
  CHECK_THROWS_AS(gradient_rellich_remainder(5, {{mode(5, 0), f}}, quad),
                  std::domain_error);
}

TEST_CASE("remainder nonnegative over the randomized corpus") {
  WeightedQuadrature quad;
  for (int n : {3, 4}) {
    for (int k = 0; k <= 3; ++k) {
      auto corpus = random_profile_corpus(k, 12, 20240 + 10 * n + k);
      for (const auto& f : corpus) {
        double scale = bilap_form(mode(n, k), f, quad);
        double rem = gradient_rellich_remainder(n, {{mode(n, k), f}}, quad);
        CHECK(rem >= -1e-8 * scale);
      }
    }
    // multi-mode combinations
    auto c1 = random_profile_corpus(1, 7, 77 + n);
    auto c2 = random_profile_corpus(2, 7, 78 + n);
    for (int i = 0; i < 7; ++i) {
      double scale = bilap_form(mode(n, 1), c1[i], quad) +
                     bilap_form(mode(n, 2), c2[i], quad);
      double rem = gradient_rellich_remainder(
          n, {{mode(n, 1), c1[i]}, {mode(n, 2), c2[i]}}, quad);
      CHECK(rem >= -1e-8 * scale);
    }
  }
}

TEST_CASE("gradhardy dominates the n-1 weighted mass for k >= 1") {
  WeightedQuadrature quad;
  for (int n : {3, 5}) {
    auto corpus = random_profile_corpus(1, 5, 99);
    for (const auto& f : corpus) {
      double lhs = gradhardy_form(mode(n, 1), f, quad);
      double mass = hardy4_form(mode(n, 1), f, quad);
      CHECK(lhs >= (n - 1) * mass - 1e-10 * lhs);
    }
  }
}

TEST_CASE("near-extremal mode-1 profile makes the n = 4 remainder small") {
  auto f = enveloped_wave(4, 0.0, 40.0);
  auto deep = make_log_quadrature(260.0);
  double bl = bilap_form(mode(4, 1), f, deep);
  double rem = bl - 3.0 * gradhardy_form(mode(4, 1), f, deep);
  CHECK(rem / bl < 0.05);
  CHECK(rem / bl > -1e-9);
}
