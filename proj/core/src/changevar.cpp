#include "rellich/changevar.hpp"

#include "rellich/constants.hpp"
#include "rellich/laurent.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace rellich {

namespace {

// One symbolic differentiation step for sum_m c_m g^sigma X^{m q} r^{-j},
// q = 1/(4(n-1)):
//   d/dr -> g^sigma r^{-j-1} [ sigma*nu X^{(m+2(n-2))q}
//                              + m q X^{(m+4(n-1))q} - j X^{m q} ]
std::map<int, Rational> derive_terms(const std::map<int, Rational>& terms, int n,
                                     const Rational& sigma_nu, int j) {
  std::map<int, Rational> out;
  const int shift_g = 2 * (n - 2);
  const int shift_x = 4 * (n - 1);
  const Rational q = Rational(1) / shift_x;
  for (const auto& [m, c] : terms) {
    if (sigma_nu != 0) out[m + shift_g] += c * sigma_nu;
    Rational cx = c * m * q;
    if (cx != 0) out[m + shift_x] += cx;
    if (j != 0) out[m] += -Rational(j) * c;
  }
  for (auto it = out.begin(); it != out.end();)
    it = (it->second == 0) ? out.erase(it) : std::next(it);
  return out;
}

std::vector<std::pair<int, double>> to_doubles(const std::map<int, Rational>& t) {
  std::vector<std::pair<int, double>> out;
  out.reserve(t.size());
  for (const auto& [m, c] : t) out.emplace_back(m, to_double(c));
  return out;
}

}  // namespace

SubstitutionMaps::SubstitutionMaps(int n, const Rational& beta) : n_(n) {
  Dimension(n).require_at_least_5("SubstitutionMaps");
  if (beta <= 0) throw std::domain_error("beta must be positive");
  beta_ = to_double(beta);
  Rational s = Rational(n - 4) / (2 * beta);
  Rational nu = Rational(n) / (2 * (n - 1));
  s_ = to_double(s);
  nu_ = to_double(nu);

  // g-stack: g = g^1 X^0 r^0
  {
    std::map<int, Rational> cur{{0, Rational(1)}};
    g_stack_.push_back(to_doubles(cur));
    for (int order = 1; order <= 3; ++order) {
      cur = derive_terms(cur, n, nu, order - 1);
      g_stack_.push_back(to_doubles(cur));
    }
  }
  // alpha-stack: alpha = g^s X^{-3(n-2) q}
  {
    std::map<int, Rational> cur{{-3 * (n - 2), Rational(1)}};
    alpha_stack_.push_back(to_doubles(cur));
    for (int order = 1; order <= 4; ++order) {
      cur = derive_terms(cur, n, s * nu, order - 1);
      alpha_stack_.push_back(to_doubles(cur));
    }
  }
}

double SubstitutionMaps::g(double r) const {
  if (!(r > 1e-8) || r > 1.0)
    throw std::domain_error("SubstitutionMaps: r must lie in (1e-8, 1]");
  double X = x_of_r(r);
  return std::exp(1.0 - std::pow(X, -nu_));
}

double SubstitutionMaps::g_inverse(double t) const {
  if (!(t > 0.0) || t > 1.0) throw std::domain_error("g_inverse: t in (0,1]");
  double w = 1.0 - std::log(t);  // = X(t)^{-1}
  return std::exp(1.0 - std::pow(w, 1.0 / nu_));
}

double SubstitutionMaps::eval_stack(const std::vector<std::pair<int, double>>& terms,
                                    int order, double sigma, double r) const {
  double X = x_of_r(r);
  double lnX = std::log(X);
  double q = 1.0 / (4.0 * (n_ - 1));
  double gpow = std::exp(sigma * (1.0 - std::pow(X, -nu_)));
  double sum = 0.0;
  for (const auto& [m, c] : terms) sum += c * std::exp(m * q * lnX);
  return gpow * sum * std::exp(-order * std::log(r));
}

std::array<double, 4> SubstitutionMaps::g_derivs(double r) const {
  if (!(r > 1e-8) || r > 1.0)
    throw std::domain_error("SubstitutionMaps: r must lie in (1e-8, 1]");
  std::array<double, 4> out{};
  for (int j = 0; j < 4; ++j) out[j] = eval_stack(g_stack_[j], j, 1.0, r);
  return out;
}

std::array<double, 5> SubstitutionMaps::alpha_derivs(double r) const {
  if (!(r > 1e-8) || r > 1.0)
    throw std::domain_error("SubstitutionMaps: r must lie in (1e-8, 1]");
  std::array<double, 5> out{};
  for (int j = 0; j < 5; ++j) out[j] = eval_stack(alpha_stack_[j], j, s_, r);
  return out;
}

double SubstitutionMaps::max_fd_residual(int points) const {
  double worst = 0.0;
  for (int i = 0; i < points; ++i) {
    double r = 0.05 + 0.9 * (i + 0.5) / points;
    double h = 2e-3 * r;
    auto fd = [&](auto&& f) {
      return (f(r - 2 * h) - 8 * f(r - h) + 8 * f(r + h) - f(r + 2 * h)) / (12 * h);
    };
    for (int j = 1; j < 4; ++j) {
      double est = fd([&](double x) { return g_derivs(x)[j - 1]; });
      double ex = g_derivs(r)[j];
      worst = std::max(worst, std::abs(est - ex) / std::max(std::abs(ex), 1e-12));
    }
    for (int j = 1; j < 5; ++j) {
      double est = fd([&](double x) { return alpha_derivs(x)[j - 1]; });
      double ex = alpha_derivs(r)[j];
      worst = std::max(worst, std::abs(est - ex) / std::max(std::abs(ex), 1e-12));
    }
  }
  return worst;
}

double SubstitutionMaps::relation_residual(int points) const {
  double worst = 0.0;
  for (int i = 0; i < points; ++i) {
    double u = 1e-3 + (12.0 - 1e-3) * i / (points - 1);  // r from ~1 down to e^-12
    double r = std::exp(-u);
    double lhs = x_of_r(g(r));
    double rhs = std::pow(x_of_r(r), nu_);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

double validate_sphere_split(int n, double theta, const ModeSpec& mode,
                             const RadialProfile& f, const WeightedQuadrature& quad) {
  double mu = static_cast<double>(mode.mu);
  double lhs = integrate(
      [&](double r) {
        if (r < 1e-60 || r >= f.support_end) return 0.0;
        auto v = f(r);
        double lap = v[2] + (n - 1) * v[1] / r - mu * v[0] / (r * r);
        return lap * lap * std::pow(r, n + theta - 1.0);
      },
      0.0, 0.0, quad);
  double rhs = integrate(
      [&](double r) {
        if (r < 1e-60 || r >= f.support_end) return 0.0;
        auto v = f(r);
        double t2 = v[2] * v[2] * std::pow(r, n + theta - 1.0);
        double t1 = ((n - 1) * (1 - theta) + 2 * mu) * v[1] * v[1] *
                    std::pow(r, n + theta - 3.0);
        double t0 = (mu * mu - (theta - 2) * (n + theta - 4) * mu) * v[0] * v[0] *
                    std::pow(r, n + theta - 5.0);
        return t2 + t1 + t0;
      },
      0.0, 0.0, quad);
  double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  return std::abs(lhs - rhs) / scale;
}

PowerSubstitutionResult validate_power_substitution(int n, const Rational& beta,
                                                    const RadialProfile& y,
                                                    const WeightedQuadrature& quad) {
  Dimension(n).require_at_least_5("validate_power_substitution");
  double b = to_double(beta);
  double A = to_double(Rational(2 * n - 4) / (beta * beta) -
                       Rational(n - 4) / beta - 1);

  double lhs = integrate(
      [&](double r) {
        if (r < 1e-60) return 0.0;
        double t = std::pow(r, b);
        if (t >= y.support_end) return 0.0;
        auto v = y(t);
        double ur = b * std::pow(r, b - 1) * v[1];
        double urr = b * (b - 1) * std::pow(r, b - 2) * v[1] +
                     b * b * std::pow(r, 2 * b - 2) * v[2];
        double lap = urr + (n - 1) * ur / r;
        return lap * lap * std::pow(r, n - 1.0);
      },
      0.0, 0.0, quad);
  double rhs = b * b * b *
               (integrate(
                    [&](double t) {
                      if (t < 1e-60 || t >= y.support_end) return 0.0;
                      auto v = y(t);
                      return v[2] * v[2];
                    },
                    (3 * b + n - 4) / b, 0.0, quad) +
                A * integrate(
                        [&](double t) {
                          if (t < 1e-60 || t >= y.support_end) return 0.0;
                          auto v = y(t);
                          return v[1] * v[1];
                        },
                        (b + n - 4) / b, 0.0, quad));

  double p = 2.0 * n / (n - 4.0);
  double m_lhs = integrate(
      [&](double r) {
        if (r < 1e-60) return 0.0;
        double t = std::pow(r, b);
        if (t >= y.support_end) return 0.0;
        return std::pow(std::abs(y(t)[0]), p);
      },
      n - 1.0, 0.0, quad);
  double m_rhs = 1.0 / b *
                 integrate(
                     [&](double t) {
                       if (t < 1e-60 || t >= y.support_end) return 0.0;
                       return std::pow(std::abs(y(t)[0]), p);
                     },
                     (n - b) / b, 0.0, quad);

  PowerSubstitutionResult out;
  out.radial_residual = std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
  out.measure_residual = std::abs(m_lhs - m_rhs) / std::max(std::abs(m_lhs), 1e-300);
  return out;
}

WeightedSubstitutionResult validate_weighted_substitution(
    int n, const ModeSpec& mode, const RadialProfile& w,
    const WeightedQuadrature& quad) {
  Dimension(n).require_at_least_5("validate_weighted_substitution");
  Rational beta_q = Rational(n) / (2 * (n - 1));
  double b = to_double(beta_q);            // beta
  double binv = to_double(1 / beta_q);     // 1/beta, the Laurent variable
  SubstitutionMaps maps(n, beta_q);
  double mu = static_cast<double>(mode.mu);

  auto G = encode(n, EncodedFunction::G);
  auto H = encode(n, EncodedFunction::H);
  auto K = encode(n, EncodedFunction::K);

  auto V = [&](double r) -> std::array<double, 3> {
    if (r < 1e-6) return {0.0, 0.0, 0.0};
    double t = maps.g(r);
    if (t >= w.support_end) return {0.0, 0.0, 0.0};
    auto gd = maps.g_derivs(r);
    auto ad = maps.alpha_derivs(r);
    auto h = w(t);
    double v = ad[0] * h[0];
    double vp = ad[1] * h[0] + ad[0] * gd[1] * h[1];
    double vpp = ad[2] * h[0] + 2 * ad[1] * gd[1] * h[1] + ad[0] * gd[2] * h[1] +
                 ad[0] * gd[1] * gd[1] * h[2];
    return {v, vp, vpp};
  };

  // (i) radial part
  double lhs_r = integrate(
      [&](double r) {
        auto v = V(r);
        return r * r * r * v[2] * v[2] +
               0.5 * (static_cast<double>(n) * n - 4 * n + 6) * r * v[1] * v[1];
      },
      0.0, 0.0, quad);
  double nu3 = std::pow(n / (2.0 * (n - 1)), 3);
  double rhs_r =
      nu3 * integrate(
                [&](double t) {
                  if (t < 1e-60 || t >= w.support_end) return 0.0;
                  auto h = w(t);
                  return h[2] * h[2];
                },
                (3 * b + n - 4) / b, 0.0, quad) +
      integrate(
          [&](double t) {
            if (t < 1e-60 || t >= w.support_end) return 0.0;
            auto h = w(t);
            return G.eval(x_of_r(t), binv) * h[1] * h[1];
          },
          (b + n - 4) / b, 0.0, quad) +
      integrate(
          [&](double t) {
            if (t < 1e-60 || t >= w.support_end) return 0.0;
            auto h = w(t);
            return H.eval(x_of_r(t), binv) * h[0] * h[0];
          },
          (-b + n - 4) / b, 0.0, quad);

  // (ii) non-radial part
  double lhs_nr = integrate(
      [&](double r) {
        if (r < 1e-6) return 0.0;
        double t = maps.g(r);
        if (t < 1e-60 || t >= w.support_end) return 0.0;
        auto gd = maps.g_derivs(r);
        auto ad = maps.alpha_derivs(r);
        auto h = w(t);
        double v = ad[0] * h[0];
        double vr = ad[1] * h[0] + ad[0] * gd[1] * h[1];
        return mu * mu / r * v * v + 2 * mu * r * vr * vr +
               0.5 * n * (n - 4) * mu / r * v * v;
      },
      0.0, 0.0, quad);
  double rhs_nr =
      2.0 * (n - 1) / n * mu * mu *
          integrate(
              [&](double t) {
                if (t < 1e-60 || t >= w.support_end) return 0.0;
                auto h = w(t);
                return std::pow(x_of_r(t), (8.0 - 4 * n) / n) * h[0] * h[0];
              },
              (n - b - 4) / b, 0.0, quad) +
      static_cast<double>(n) / (n - 1) * mu *
          integrate(
              [&](double t) {
                if (t < 1e-60 || t >= w.support_end) return 0.0;
                auto h = w(t);
                return std::pow(x_of_r(t), (4.0 - 2 * n) / n) * h[1] * h[1];
              },
              (n + b - 4) / b, 0.0, quad) +
      mu * integrate(
               [&](double t) {
                 if (t < 1e-60 || t >= w.support_end) return 0.0;
                 auto h = w(t);
                 return K.eval(x_of_r(t), binv) * h[0] * h[0];
               },
               (n - b - 4) / b, 0.0, quad);

  // (iii) Sobolev measure
  double p = 2.0 * n / (n - 4.0);
  double m_lhs = integrate(
      [&](double r) {
        auto v = V(r);
        return std::pow(std::abs(v[0]), p);
      },
      -1.0, (2.0 * n - 4) / (n - 4), quad);
  double m_rhs = 2.0 * (n - 1) / n *
                 integrate(
                     [&](double t) {
                       if (t < 1e-60 || t >= w.support_end) return 0.0;
                       return std::pow(std::abs(w(t)[0]), p);
                     },
                     (n - b) / b, 0.0, quad);

  WeightedSubstitutionResult out;
  out.radial_residual = std::abs(lhs_r - rhs_r) / std::max(std::abs(lhs_r), 1e-300);
  out.nonradial_residual =
      std::abs(lhs_nr - rhs_nr) / std::max(std::abs(lhs_nr), 1e-300);
  out.measure_residual = std::abs(m_lhs - m_rhs) / std::max(std::abs(m_lhs), 1e-300);
  return out;
}

RadialProfile u_to_v(int n, const RadialProfile& u) {
  double a = 0.5 * (n - 4);
  RadialProfile v;
  v.vanishing_order = u.vanishing_order;  // order grows by a >= 0 for n >= 5
  v.support_end = u.support_end;
  auto ue = u.eval;
  v.eval = [a, ue](double r) -> std::array<double, 3> {
    if (r <= 0) return {0, 0, 0};
    auto x = ue(r);
    double ra = std::pow(r, a);
    return {ra * x[0], ra * (x[1] + a * x[0] / r),
            ra * (x[2] + 2 * a * x[1] / r + a * (a - 1) * x[0] / (r * r))};
  };
  return v;
}

RadialProfile v_to_u(int n, const RadialProfile& v) {
  double a = -0.5 * (n - 4);
  RadialProfile u;
  u.vanishing_order = v.vanishing_order;
  u.support_end = v.support_end;
  auto ve = v.eval;
  u.eval = [a, ve](double r) -> std::array<double, 3> {
    if (r <= 0) return {0, 0, 0};
    auto x = ve(r);
    double ra = std::pow(r, a);
    return {ra * x[0], ra * (x[1] + a * x[0] / r),
            ra * (x[2] + 2 * a * x[1] / r + a * (a - 1) * x[0] / (r * r))};
  };
  return u;
}

RadialProfile v_to_w(const SubstitutionMaps& maps, const RadialProfile& v) {
  RadialProfile w;
  w.vanishing_order = v.vanishing_order;
  w.support_end = 1.0;
  auto ve = v.eval;
  // copy the maps by value; they are small tables
  SubstitutionMaps m = maps;
  w.eval = [m, ve](double t) -> std::array<double, 3> {
    if (t <= 0.0 || t >= 1.0) return {0, 0, 0};
    double r = m.g_inverse(t);
    if (r <= 1e-8) return {0, 0, 0};
    auto gd = m.g_derivs(r);
    auto ad = m.alpha_derivs(r);
    auto x = ve(r);
    double w0 = x[0] / ad[0];
    double w1 = (x[1] - ad[1] * w0) / (ad[0] * gd[1]);
    double w2 = (x[2] - ad[2] * w0 - (2.0 * ad[1] * gd[1] + ad[0] * gd[2]) * w1) /
                (ad[0] * gd[1] * gd[1]);
    return {w0, w1, w2};
  };
  return w;
}

RadialProfile w_to_v(const SubstitutionMaps& maps, const RadialProfile& w) {
  RadialProfile v;
  v.vanishing_order = w.vanishing_order;
  v.support_end = 1.0;
  auto we = w.eval;
  SubstitutionMaps m = maps;
  v.eval = [m, we](double r) -> std::array<double, 3> {
    if (r <= 1e-8 || r > 1.0) return {0, 0, 0};
    double t = m.g(r);
    auto gd = m.g_derivs(r);
    auto ad = m.alpha_derivs(r);
    auto h = we(t);
    return {ad[0] * h[0], ad[1] * h[0] + ad[0] * gd[1] * h[1],
            ad[2] * h[0] + 2.0 * ad[1] * gd[1] * h[1] + ad[0] * gd[2] * h[1] +
                ad[0] * gd[1] * gd[1] * h[2]};
  };
  return v;
}

double j_radial(int n, const RadialProfile& v, const WeightedQuadrature& quad) {
  return integrate(
      [&](double r) {
        if (r < 1e-60 || r >= v.support_end) return 0.0;
        auto x = v(r);
        return r * r * r * x[2] * x[2] +
               0.5 * (static_cast<double>(n) * n - 4 * n + 6) * r * x[1] * x[1];
      },
      0.0, 0.0, quad);
}

double rellich_gap_radial(int n, const RadialProfile& u,
                          const WeightedQuadrature& quad) {
  double R = to_double(rellich_u_exact(n));
  return integrate(
      [&](double r) {
        if (r < 1e-60 || r >= u.support_end) return 0.0;
        auto x = u(r);
        double lap = x[2] + (n - 1) * x[1] / r;
        return lap * lap * std::pow(r, n - 1.0) - R * x[0] * x[0] * std::pow(r, n - 5.0);
      },
      0.0, 0.0, quad);
}

}  // namespace rellich
