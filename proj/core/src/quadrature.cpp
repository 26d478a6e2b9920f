#include "rellich/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rellich {

void gauss_legendre(int n, double a, double b, std::vector<double>& x,
                    std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  // Newton on Legendre polynomials, nodes on [-1,1] then affine map.
  const double eps = 1e-15;
  int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double z1 = z;
      z = z1 - p0 / pp;
      if (std::abs(z - z1) < eps) break;
    }
    double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
    x[i] = xm - xl * z;
    x[n - 1 - i] = xm + xl * z;
    w[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

WeightedQuadrature::WeightedQuadrature() { *this = WeightedQuadrature(60, 16, 0.7); }

WeightedQuadrature::WeightedQuadrature(int subintervals_, int points_, double ratio_,
                                       int tail_subintervals_, int tail_points_,
                                       double tail_wmax_)
    : subintervals(subintervals_),
      points(points_),
      ratio(ratio_),
      tail_subintervals(tail_subintervals_),
      tail_points(tail_points_),
      tail_wmax(tail_wmax_) {
  if (subintervals < 1 || points < 1 || ratio <= 0.0 || ratio >= 1.0)
    throw std::invalid_argument("bad quadrature parameters");

  std::vector<double> gx, gw;

  // Zone 1: geometric subintervals [ratio^{j+1}, ratio^j], j = 0..subintervals-1,
  // ordered so that nodes come out increasing in u (decreasing in r).
  for (int j = 0; j < subintervals; ++j) {
    double hi = std::pow(ratio, j);
    double lo = hi * ratio;
    gauss_legendre(points, lo, hi, gx, gw);
    for (int i = points - 1; i >= 0; --i) {
      Node nd;
      nd.r = gx[i];
      nd.u = -std::log(gx[i]);
      nd.log_gw = std::log(gw[i]);
      nd.tail = false;
      nodes.push_back(nd);
    }
  }

  // Tail zone, uniform in w = log(1+u) from the zone-1 edge out to tail_wmax.
  if (tail_subintervals > 0) {
    double u_edge = -static_cast<double>(subintervals) * std::log(ratio);
    double w0 = std::log1p(u_edge);
    if (tail_wmax > w0) {
      double dw = (tail_wmax - w0) / tail_subintervals;
      for (int j = 0; j < tail_subintervals; ++j) {
        gauss_legendre(tail_points, w0 + j * dw, w0 + (j + 1) * dw, gx, gw);
        for (int i = 0; i < tail_points; ++i) {
          Node nd;
          nd.u = std::expm1(gx[i]);
          nd.r = std::exp(-nd.u);  // may underflow to 0
          nd.log_gw = std::log(gw[i]);
          nd.tail = true;
          nodes.push_back(nd);
        }
      }
    }
  }
}

std::vector<double> WeightedQuadrature::main_nodes() const {
  std::vector<double> out;
  for (const auto& nd : nodes)
    if (!nd.tail) out.push_back(nd.r);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

double run(const WeightedQuadrature& quad, double p, double sigma,
           const std::function<double(double, double)>& f) {
  long double acc = 0.0L;
  for (const auto& nd : quad.nodes) {
    double fv = f(nd.r, nd.u);
    if (std::isnan(fv)) throw std::runtime_error("non-finite integrand sample");
    if (fv == 0.0) continue;
    // log of r^p X^sigma times the measure factor at this node
    double logw;
    if (!nd.tail) {
      logw = p * (-nd.u) - sigma * std::log1p(nd.u) + nd.log_gw;
    } else {
      // dr = -e^{-u} du, du = (1+u) dw:
      //   r^p X^sigma dr = exp(-(p+1)u) (1+u)^{1-sigma} dw
      double w = std::log1p(nd.u);
      logw = -(p + 1.0) * nd.u + (1.0 - sigma) * w + nd.log_gw;
    }
    double contrib;
    if (logw < 650.0) {
      double wv = std::exp(logw);
      contrib = wv * fv;
      if (std::isinf(contrib))
        contrib = (fv > 0 ? 1.0 : -1.0) * std::exp(logw + std::log(std::abs(fv)));
    } else {
      if (std::isinf(fv)) throw std::runtime_error("non-finite integrand sample");
      contrib = (fv > 0 ? 1.0 : -1.0) * std::exp(logw + std::log(std::abs(fv)));
    }
    acc += contrib;
  }
  double out = static_cast<double>(acc);
  if (!std::isfinite(out))
    throw std::runtime_error("weighted integral did not evaluate to a finite value");
  return out;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double p, double sigma,
                 const WeightedQuadrature& quad) {
  return run(quad, p, sigma, [&](double r, double) { return f(r); });
}

double integrate_ru(const std::function<double(double, double)>& f, double p,
                    double sigma, const WeightedQuadrature& quad) {
  return run(quad, p, sigma, f);
}

double integrate_interval(const std::function<double(double)>& f, double a,
                          double b, int subs, int points) {
  std::vector<double> gx, gw;
  long double acc = 0.0L;
  double h = (b - a) / subs;
  for (int j = 0; j < subs; ++j) {
    gauss_legendre(points, a + j * h, a + (j + 1) * h, gx, gw);
    for (int i = 0; i < points; ++i) acc += gw[i] * f(gx[i]);
  }
  return static_cast<double>(acc);
}

WeightedQuadrature make_log_quadrature(double umax, double du, int points) {
  int subs = std::max(8, static_cast<int>(std::ceil(umax / du)));
  double ratio = std::exp(-umax / subs);
  // no tail: these quadratures are for compactly supported integrands
  return WeightedQuadrature(subs, points, ratio, 0, 0, 0.0);
}

}  // namespace rellich
