#ifndef RELLICH_CHANGEVAR_HPP
#define RELLICH_CHANGEVAR_HPP

#include "rellich/harmonics.hpp"
#include "rellich/quadrature.hpp"
#include "rellich/rational.hpp"

#include <array>

namespace rellich {

/// The second substitution of the weighted Rellich-Sobolev proof:
///   t = g(r) = exp(1 - X(r)^{-n/(2(n-1))}),
///   alpha(r) = X(r)^{-3(n-2)/(4(n-1))} g(r)^{(n-4)/(2 beta)}.
/// Derivatives up to g''' and alpha'''' are exact rational combinations of
/// g^sigma X^{m/(4(n-1))} r^{-j}; the stacks are derived symbolically at
/// construction rather than transcribed, and validated against finite
/// differences.  exp(1 - X^{-n/(2(n-1))}) decays double-exponentially, so
/// evaluation below r = 1e-8 is refused (validation never goes there).
class SubstitutionMaps {
 public:
  SubstitutionMaps(int n, const Rational& beta);

  int n() const { return n_; }
  double beta() const { return beta_; }

  double g(double r) const;
  double g_inverse(double t) const;
  /// g, g', g'', g'''
  std::array<double, 4> g_derivs(double r) const;
  /// alpha, alpha', ..., alpha''''
  std::array<double, 5> alpha_derivs(double r) const;

  /// max over the stacks of the relative deviation from a five-point
  /// finite-difference derivative of the previous stack entry, over
  /// `points` radii in [0.05, 0.95].
  double max_fd_residual(int points = 20) const;

  /// max |X(g(r)) - X(r)^{n/(2(n-1))}| over log-spaced radii.
  double relation_residual(int points = 100) const;

 private:
  struct Stack;  // polynomial in X^{1/(4(n-1))} times g^sigma r^{-j}
  int n_;
  double beta_;
  double s_;   // (n-4)/(2 beta)
  double nu_;  // n/(2(n-1))
  std::vector<std::vector<std::pair<int, double>>> g_stack_;      // orders 0..3
  std::vector<std::vector<std::pair<int, double>>> alpha_stack_;  // orders 0..4
  double eval_stack(const std::vector<std::pair<int, double>>& terms, int order,
                    double sigma_times, double r) const;
};

/// | integral (Delta v)^2 |x|^theta dx  -  five-term split | / scale for a
/// mode-k function v = f(r) * (orthonormal harmonic); the sphere integrals
/// are reduced by mu and mu^2.
double validate_sphere_split(int n, double theta, const ModeSpec& mode,
                             const RadialProfile& f, const WeightedQuadrature& quad);

struct PowerSubstitutionResult {
  double radial_residual;   // (u_rr + (n-1)u_r/r)^2 identity
  double measure_residual;  // |u|^{2n/(n-4)} measure identity
};

/// u(r) = y(r^beta): checks the radial-energy and measure identities of the
/// first substitution by quadrature on both sides.
PowerSubstitutionResult validate_power_substitution(int n, const Rational& beta,
                                                    const RadialProfile& y,
                                                    const WeightedQuadrature& quad);

struct WeightedSubstitutionResult {
  double radial_residual;     // J_R[v] against the G/H form
  double nonradial_residual;  // J_NR[v] against the K form
  double measure_residual;    // Sobolev measure identity
};

/// v(r) = alpha(r) w(g(r)) for a mode-k profile w: validates the three
/// parts of the weighted change of variables, with G, H, K evaluated from
/// their exact Laurent encodings.
WeightedSubstitutionResult validate_weighted_substitution(
    int n, const ModeSpec& mode, const RadialProfile& w,
    const WeightedQuadrature& quad);

/// v = r^{(n-4)/2} u and its inverse; pointwise profile transforms.
RadialProfile u_to_v(int n, const RadialProfile& u);
RadialProfile v_to_u(int n, const RadialProfile& v);

/// w(t) = v(r)/alpha(r) at r = g^{-1}(t), with t-derivatives recovered from
/// the chain rule; inverse of v(r) = alpha(r) w(g(r)).
RadialProfile v_to_w(const SubstitutionMaps& maps, const RadialProfile& v);
RadialProfile w_to_v(const SubstitutionMaps& maps, const RadialProfile& w);

/// J[v] for radial v: integral r^3 v''^2 + (n^2-4n+6)/2 integral r v'^2.
double j_radial(int n, const RadialProfile& v, const WeightedQuadrature& quad);

/// Direct LHS: integral (Delta u)^2 r^{n-1} - n^2(n-4)^2/16 integral u^2 r^{n-5}.
double rellich_gap_radial(int n, const RadialProfile& u,
                          const WeightedQuadrature& quad);

}  // namespace rellich

#endif
