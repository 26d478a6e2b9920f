#include "rellich/mellin.hpp"

#include "rellich/constants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rellich {

double grad_symbol(const SymbolPoint& p) {
  Dimension dim(p.n);
  if (p.k < 0) throw std::domain_error("grad_symbol: k >= 0 required");
  if (!std::isfinite(p.tau)) throw std::domain_error("grad_symbol: tau not finite");
  double n = p.n;
  double mu = static_cast<double>(p.k) * (p.k + p.n - 2);
  double x = p.tau * p.tau;
  double den = x + mu + 0.25 * (n - 4) * (n - 4);
  if (den == 0.0)
    throw std::domain_error("grad_symbol: singular point (n=4, k=0, tau=0)");
  double a = x + mu + 0.25 * n * (n - 4);
  return (a * a + 4.0 * x) / den;
}

double rellich_symbol(int n, double tau) {
  Dimension(n).require_at_least_5("rellich_symbol");
  double x = tau * tau;
  double a = x + 0.25 * static_cast<double>(n) * (n - 4);
  return a * a + 4.0 * x;
}

RadialProfile enveloped_wave(int n, double tau, double envelope_width) {
  if (envelope_width <= 0) throw std::invalid_argument("envelope width must be > 0");
  const double W = envelope_width;
  const double u0 = 0.5;                              // support ends at r = e^{-1/2}
  // Keep |f''| ~ r^{(4-n)/2-2} inside double range; for n >= 5 the symbol is
  // flat near tau = 0 so the clipped Gaussian still certifies well.
  const double safe = 1300.0 / std::max(n, 3);
  const double u1 = std::min(u0 + 6.0 * W, safe);
  const double uc = 0.5 * (u0 + u1);
  const double a = 0.5 * (4.0 - n);

  RadialProfile p;
  p.vanishing_order = 1000;  // compact support inside (0,1)
  p.support_end = std::exp(-u0);
  p.eval = [=](double r) -> std::array<double, 3> {
    if (r <= 0.0) return {0.0, 0.0, 0.0};
    double u = -std::log(r);
    if (u <= u0 || u >= u1) return {0.0, 0.0, 0.0};
    double y = (u - uc) / W;
    // Gaussian envelope times a C^2 clamp that vanishes at both support ends.
    double s0 = (u - u0) / (uc - u0), s1 = (u1 - u) / (u1 - uc);
    double cl = 1.0, dcl = 0.0, ddcl = 0.0;  // derivatives w.r.t. u
    auto smooth = [](double t, double scale, double& v, double& dv, double& ddv) {
      // t in (0,1): quintic step, =1 for t >= 1
      if (t >= 1.0) { v = 1.0; dv = 0.0; ddv = 0.0; return; }
      v = t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
      dv = 30.0 * t * t * (1.0 - t) * (1.0 - t) * scale;
      ddv = 60.0 * t * (1.0 - t) * (1.0 - 2.0 * t) * scale * scale;
    };
    double v0, d0, dd0, v1, d1, dd1;
    smooth(std::min(1.0, 4.0 * s0), 4.0 / (uc - u0), v0, d0, dd0);
    smooth(std::min(1.0, 4.0 * s1), -4.0 / (u1 - uc), v1, d1, dd1);
    cl = v0 * v1;
    dcl = d0 * v1 + v0 * d1;
    ddcl = dd0 * v1 + 2.0 * d0 * d1 + v0 * dd1;

    double g = std::exp(-0.5 * y * y);
    double dg = -y / W * g;
    double ddg = (y * y - 1.0) / (W * W) * g;
    double env = g * cl, denv = dg * cl + g * dcl,
           ddenv = ddg * cl + 2.0 * dg * dcl + g * ddcl;

    double c = std::cos(tau * (u - uc)), s = std::sin(tau * (u - uc));
    double e = env * c;
    double de = denv * c - tau * env * s;                       // d/du
    double dde = ddenv * c - 2.0 * tau * denv * s - tau * tau * env * c;

    // f = r^a e(u), u = -log r:
    double ra = std::exp(a * std::log(r));
    double f = ra * e;
    double fp = ra / r * (a * e - de);
    double fpp = ra / (r * r) * (a * (a - 1.0) * e - (2.0 * a - 1.0) * de + dde);
    return {f, fp, fpp};
  };
  return p;
}

double certify_symbol(const SymbolPoint& p, double envelope_width,
                      const WeightedQuadrature& quad) {
  double target = grad_symbol(p);
  auto f = enveloped_wave(p.n, p.tau, envelope_width);
  // Resolve the whole support; the supplied quadrature sets the points per
  // subinterval, the range comes from the envelope.
  double umax = std::min(0.5 + 6.0 * envelope_width, 1300.0 / std::max(p.n, 3)) + 1.0;
  auto deep = make_log_quadrature(umax, 0.18, std::max(8, quad.points / 2));
  auto m = mode(p.n, p.k);
  double num = bilap_form(m, f, deep);
  double den = gradhardy_form(m, f, deep);
  if (den <= 0.0) throw std::runtime_error("certify_symbol: degenerate envelope");
  return std::abs(num / den - target) / target;
}

namespace {

double min_over_tau(int n, int k, double tau_max, int steps, double& argmin) {
  auto q = [&](double tau) { return grad_symbol({n, k, tau}); };
  // For n = 4, k = 0 the symbol is singular at tau = 0; start the grid off 0.
  double lo = (n == 4 && k == 0) ? 1e-8 : 0.0;
  double best = q(lo), best_tau = lo;
  for (int i = 1; i <= steps; ++i) {
    double tau = lo + (tau_max - lo) * i / steps;
    double v = q(tau);
    if (v < best) {
      best = v;
      best_tau = tau;
    }
  }
  // Golden-section refinement around the grid minimum.
  double h = (tau_max - lo) / steps;
  double a = std::max(lo, best_tau - h), b = std::min(tau_max, best_tau + h);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = q(c), fd = q(d);
  while (b - a > 1e-12) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - gr * (b - a); fc = q(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + gr * (b - a); fd = q(d);
    }
  }
  double mid = 0.5 * (a + b), fm = q(mid);
  // strict relative improvement only: boundary minima (tau = 0) must not be
  // displaced by last-ulp rounding of the refined candidate
  if (fm < best * (1.0 - 1e-12)) { best = fm; best_tau = mid; }
  argmin = best_tau;
  return best;
}

}  // namespace

ModeMinimum minimize_modes(int n, int k_max, double tau_max, int tau_steps) {
  Dimension dim(n);
  if (k_max < 2) throw std::invalid_argument("minimize_modes: k_max >= 2 required");
  ModeMinimum out;
  out.value = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= k_max; ++k) {
    double argmin = 0.0;
    double v = min_over_tau(n, k, tau_max, tau_steps, argmin);
    out.table.push_back({k, v, argmin});
    if (v < out.value) {
      out.value = v;
      out.k_star = k;
      out.tau_star = argmin;
    }
  }
  // Truncation justification: per-mode minima must be increasing in k at the
  // end of the scan (mu_k growth dominates the symbol).
  out.tail_monotone = true;
  for (size_t i = out.table.size() >= 4 ? out.table.size() - 3 : 1;
       i < out.table.size(); ++i)
    if (out.table[i].min_value <= out.table[i - 1].min_value)
      out.tail_monotone = false;
  return out;
}

double mode_gap_constant(int n, int k_max) {
  if (n != 3 && n != 4) throw std::domain_error("mode_gap_constant: n must be 3 or 4");
  double m = std::numeric_limits<double>::infinity();
  for (int k = 2; k <= k_max; ++k) {
    double argmin = 0.0;
    m = std::min(m, min_over_tau(n, k, 4.0, 200, argmin));
  }
  double c = 1.0 - to_double(c_n_exact(n)) / m;
  if (!(c > 0.0))
    throw std::runtime_error("mode gap constant failed to be positive");
  return c;
}

}  // namespace rellich
