#ifndef RELLICH_QUADRATURE_HPP
#define RELLICH_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace rellich {

/// Composite Gauss-Legendre rule for integrals of the form
///     integral_0^1 r^p X(r)^sigma f(r) dr,   X(r) = 1/(1 - log r).
///
/// The main zone is geometrically graded toward r = 0 (each subinterval
/// endpoint is `ratio` times the next one).  Integrands here carry weights
/// that vary over many decades, and X-moments with sigma close to 1 put
/// non-negligible mass at r = exp(-u) for astronomically large u, so the
/// main zone is followed by a tail zone meshed uniformly in w = log(1+u).
/// Tail nodes keep u as the primary coordinate; the corresponding r may
/// underflow to 0, which is fine because the weight is assembled in log
/// space and paired with f before exponentiation.
struct WeightedQuadrature {
  struct Node {
    double r;        // exp(-u); may underflow to 0 in the tail
    double u;        // -log r
    double log_gw;   // log of the plain Gauss weight (dr in zone 1, dw in tail)
    bool tail;       // true: weight measured in w = log(1+u)
  };

  int subintervals = 60;
  int points = 16;
  double ratio = 0.7;
  int tail_subintervals = 128;
  int tail_points = 8;
  double tail_wmax = 44.0;

  std::vector<Node> nodes;  // strictly decreasing in r / increasing in u

  WeightedQuadrature();
  WeightedQuadrature(int subintervals_, int points_, double ratio_,
                     int tail_subintervals_ = 128, int tail_points_ = 8,
                     double tail_wmax_ = 44.0);

  /// Main-zone node radii, increasing, all in (0,1).
  std::vector<double> main_nodes() const;
};

/// One-dimensional Gauss-Legendre rule on [a,b].
void gauss_legendre(int npoints, double a, double b,
                    std::vector<double>& x, std::vector<double>& w);

/// integral_0^1 r^p X^sigma f(r) dr.  Throws std::runtime_error on a
/// non-finite sample or a numerically divergent weight/f pairing.
double integrate(const std::function<double(double)>& f, double p, double sigma,
                 const WeightedQuadrature& quad);

/// Variant that hands the integrand both r and u = -log r; used by
/// integrands that need X or cutoff logic at radii below double range.
double integrate_ru(const std::function<double(double, double)>& f, double p,
                    double sigma, const WeightedQuadrature& quad);

/// Plain composite Gauss on [a,b] (no weight), `subs` subintervals.
double integrate_interval(const std::function<double(double)>& f, double a,
                          double b, int subs = 32, int points = 12);

/// Quadrature resolving log-uniform structure out to u = umax with
/// subinterval width about du in u; used for Mellin-wave certification
/// and the eps-delta trial family.
WeightedQuadrature make_log_quadrature(double umax, double du = 0.18,
                                       int points = 10);

}  // namespace rellich

#endif
