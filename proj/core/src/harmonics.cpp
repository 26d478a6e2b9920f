#include "rellich/harmonics.hpp"

#include "rellich/constants.hpp"
#include "rellich/rational.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace rellich {

ModeSpec mode(int n, int k) {
  Dimension dim(n);
  if (k < 0) throw std::domain_error("mode index k must be nonnegative");
  ModeSpec m;
  m.n = n;
  m.k = k;
  m.mu = static_cast<std::int64_t>(k) * (k + n - 2);
  if (k == 0)
    m.d = 1;
  else if (k == 1)
    m.d = n;
  else {
    BigInt d = binomial(n + k - 1, k) - binomial(n + k - 3, k - 2);
    m.d = d.convert_to<std::int64_t>();
  }
  return m;
}

RadialProfile poly_bump(int m, const std::vector<double>& coeffs) {
  // p(r) = r^m (1-r)^2 q(r); expand once into monomial coefficients so the
  // derivatives are exact.
  std::vector<double> c(coeffs.size() + 2 + m, 0.0);
  for (size_t j = 0; j < coeffs.size(); ++j) {
    c[m + j] += coeffs[j];
    c[m + j + 1] += -2.0 * coeffs[j];
    c[m + j + 2] += coeffs[j];
  }
  RadialProfile p;
  p.vanishing_order = m;
  p.support_end = 1.0;
  p.eval = [c](double r) -> std::array<double, 3> {
    double f = 0, fp = 0, fpp = 0;
    for (int j = static_cast<int>(c.size()) - 1; j >= 0; --j) {
      fpp = fpp * r + fp * 2.0;
      fp = fp * r + f;
      f = f * r + c[j];
    }
    return {f, fp, fpp};
  };
  return p;
}

std::vector<RadialProfile> random_profile_corpus(int k, int count,
                                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<RadialProfile> out;
  out.reserve(count);
  int m = std::max(k, 2);
  for (int i = 0; i < count; ++i) {
    std::vector<double> q(4);
    for (auto& a : q) a = unif(rng);
    if (std::abs(q[0]) < 0.1) q[0] += (q[0] < 0 ? -0.5 : 0.5);
    out.push_back(poly_bump(m, q));
  }
  return out;
}

namespace {

// The three weighted moments; each factor r^{e/2} is paired with the
// derivative before squaring so profiles of Mellin type r^{(4-n)/2 - j}
// stay inside double range.
struct Moments {
  double m2;  // r^{n-1} f''^2
  double m1;  // r^{n-3} f'^2
  double m0;  // r^{n-5} f^2
};

Moments moments(const ModeSpec& mode, const RadialProfile& f,
                const WeightedQuadrature& quad, bool need2, bool need1) {
  const double n = mode.n;
  Moments out{0, 0, 0};
  auto weigh = [](double halfexp_logr, double v) {
    if (v == 0.0) return 0.0;
    double t = std::exp(halfexp_logr + std::log(std::abs(v)));
    return t * t;
  };
  out.m0 = integrate_ru(
      [&](double r, double u) {
        if (r <= 0.0 || r >= f.support_end) return 0.0;
        auto v = f(r);
        return weigh(-0.5 * (n - 5) * u, v[0]);
      },
      0.0, 0.0, quad);
  if (need1)
    out.m1 = integrate_ru(
        [&](double r, double u) {
          if (r <= 0.0 || r >= f.support_end) return 0.0;
          auto v = f(r);
          return weigh(-0.5 * (n - 3) * u, v[1]);
        },
        0.0, 0.0, quad);
  if (need2)
    out.m2 = integrate_ru(
        [&](double r, double u) {
          if (r <= 0.0 || r >= f.support_end) return 0.0;
          auto v = f(r);
          return weigh(-0.5 * (n - 1) * u, v[2]);
        },
        0.0, 0.0, quad);
  return out;
}

enum class FormCheck { bilap, gradhardy, hardy4 };

void check_orders(const ModeSpec& mode, const RadialProfile& f, FormCheck which) {
  // The k = 0 bilaplacian case needs order >= 2 so the integration by parts
  // behind the mode-diagonal form has no boundary terms at the origin; the
  // r^{n-5} mass is integrable iff 2*order > 4-n.
  int need = 0;
  switch (which) {
    case FormCheck::bilap: need = mode.k == 0 ? 2 : mode.k; break;
    case FormCheck::gradhardy: need = mode.k; break;
    case FormCheck::hardy4: need = 0; break;
  }
  bool mass_needed = which == FormCheck::hardy4 ||
                     (which == FormCheck::gradhardy && mode.mu > 0) ||
                     which == FormCheck::bilap;
  if (mass_needed && 2 * f.vanishing_order <= 4 - mode.n)
    throw std::invalid_argument("divergent weight against the profile's vanishing order");
  if (f.vanishing_order < need)
    throw std::invalid_argument("profile vanishing order too low for the mode");
}

}  // namespace

double bilap_form(const ModeSpec& mode, const RadialProfile& f,
                  const WeightedQuadrature& quad) {
  check_orders(mode, f, FormCheck::bilap);
  auto m = moments(mode, f, quad, true, true);
  double mu = static_cast<double>(mode.mu);
  double n = mode.n;
  return m.m2 + (n - 1 + 2 * mu) * m.m1 + (2 * (n - 4) * mu + mu * mu) * m.m0;
}

double gradhardy_form(const ModeSpec& mode, const RadialProfile& f,
                      const WeightedQuadrature& quad) {
  check_orders(mode, f, FormCheck::gradhardy);
  auto m = moments(mode, f, quad, false, true);
  return m.m1 + static_cast<double>(mode.mu) * m.m0;
}

double hardy4_form(const ModeSpec& mode, const RadialProfile& f,
                   const WeightedQuadrature& quad) {
  check_orders(mode, f, FormCheck::hardy4);
  auto m = moments(mode, f, quad, false, false);
  return m.m0;
}

double gradient_rellich_remainder(
    int n, const std::vector<std::pair<ModeSpec, RadialProfile>>& modes,
    const WeightedQuadrature& quad) {
  if (n != 3 && n != 4)
    throw std::domain_error("gradient_rellich_remainder: n must be 3 or 4");
  double cn = to_double(c_n_exact(n));
  double sum = 0.0;
  for (const auto& [m, f] : modes) {
    if (m.n != n) throw std::invalid_argument("mode dimension mismatch");
    sum += bilap_form(m, f, quad) - cn * gradhardy_form(m, f, quad);
  }
  return sum;
}

}  // namespace rellich
