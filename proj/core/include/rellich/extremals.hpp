#ifndef RELLICH_EXTREMALS_HPP
#define RELLICH_EXTREMALS_HPP

#include "rellich/harmonics.hpp"
#include "rellich/quadrature.hpp"

#include <string>
#include <vector>

namespace rellich {

double sphere_area(int n);  // |S^{n-1}| = 2 pi^{n/2} / Gamma(n/2)

// ---------------------------------------------------------------------------
// Boundary-concentrating bubble for the second-order Sobolev constant.

struct BubbleParams {
  int n = 5;
  double lambda = 1e3;   // concentration scale
  double rho = 0.05;     // support radius of the cutoff around the center
  double offset = -1.0;  // center distance from the boundary; default 2*rho
  double center() const { return 1.0 - (offset > 0 ? offset : 2.0 * rho); }
};

struct BubbleQuotient {
  double lower = 0.0;  // certified bounds on the full Rellich-Sobolev quotient
  double upper = 0.0;
};

/// Truncated bubble (1 + lambda^2 |x-x0|^2)^{-(n-4)/2} * cutoff, |x0| = 1-2rho:
/// evaluates the full quotient by 1D quadrature in the bubble radius, with
/// the Hardy correction and the X-weights sandwiched shell by shell between
/// their bounds over |x| in [|x0|-s, |x0|+s].
BubbleQuotient bubble_quotient(const BubbleParams& p);

/// Pure Sobolev sub-quotient of the truncated bubble; depends only on
/// c = lambda * rho.  c = infinity integrates the untruncated bubble.
double pure_sobolev_quotient(int n, double c);

struct S2nResolution {
  double resolved = 0.0;
  bool printed_exponent_selected = false;  // true: power 4; false: power 4/n
  double limit_quotient = 0.0;             // untruncated bubble quotient
  double mismatch_selected = 0.0;          // relative distances to the two readings
  double mismatch_rejected = 0.0;
  std::vector<std::pair<double, double>> sweep;  // (c, quotient)
};

/// Resolves the Gamma-ratio exponent ambiguity in the closed form of the
/// second-order Sobolev constant by the bubble quotient itself.
S2nResolution resolve_s2n(int n);

// ---------------------------------------------------------------------------
// The (eps, delta) trial family for the X^4 optimality in dimension 3:
//   u = r^{1/2+eps} X^{-1/2+delta} psi(r) phi_1(omega).

struct EpsDeltaParams {
  double eps = 1e-2;
  double delta = 0.1;
  double mu = 4.0;       // candidate X power on the right-hand side
  double psi_knee = 0.5; // psi = 1 on [0, knee], cubic step down to 0 at 1

  void validate() const;
};

/// The radial factor f, with f' and f'' assembled from the closed forms of
/// the derivatives where psi = 1 and the product rule elsewhere.
RadialProfile eps_delta_profile(const EpsDeltaParams& p);

/// I^{(j)} = integral_0^1 r^{-1+2eps} X^{-1+j+2delta} psi^2 dr, j = 0..4.
/// Evaluated in log coordinates; valid for eps down to ~1e-300.
double i_integral(int j, const EpsDeltaParams& p);

/// 2 eps I0 - (1-2delta) I1, computed from its exact boundary form
/// integral e^{-2 eps u} (1+u)^{1-2delta} (psi~^2)' du over the cutoff
/// transition (no cancellation of large terms), hence O(1) uniformly.
double bft_combination(const EpsDeltaParams& p);

/// Rellich remainder of the family, three routes:
///  - forms: bilap - (25/36) gradhardy via the harmonics module (pointwise
///    in r; meaningful for eps >= 0.05),
///  - log: the same integrand assembled pointwise in u = -log r,
///  - combination: the exact regrouping
///      (191/72) * bft + [(173/36)eps^2 + eps^4] I0
///      + (delta - 1/2)[(173/18)eps + 4 eps^3] I1 + C2 I2 + psi-terms,
///    stable at arbitrarily small eps.
double lhs_energy_forms(const EpsDeltaParams& p);
double lhs_energy_log(const EpsDeltaParams& p);
double lhs_energy_combination(const EpsDeltaParams& p);

/// The cutoff-derivative remainder (every term carrying psi' or psi'');
/// bounded uniformly in (eps, delta).
double psi_remainder(const EpsDeltaParams& p);

/// C0, C1, C2 of the displayed I^{(j)} combination.
double lhs_coefficient(int j, const EpsDeltaParams& p);

/// ( integral |grad u|^6 X^mu dx )^{1/3} for the family, log-space route.
double weighted_grad_norm(const EpsDeltaParams& p);

/// Same norm for a generic mode-1 profile in dimension 3 (plain quadrature).
double grad6_norm(const RadialProfile& f, double mu, const WeightedQuadrature& quad);

/// ( integral |grad u|^4 dx )^{1/2} for a mode-1 profile in dimension 4.
double grad4_norm(const RadialProfile& f, const WeightedQuadrature& quad);

struct SweepRow {
  double delta, eps, lhs, rhs, quotient;
};

struct TrendReport {
  double mu = 0.0;
  std::vector<SweepRow> rows;  // delta-major, eps decreasing
  double max_quotient = 0.0, min_quotient = 0.0;
  double first_quotient = 0.0, last_quotient = 0.0;
  double collapse_factor = 0.0;  // max / last
};

/// Sweeps the family along the proof's order of limits (eps down first,
/// then delta toward its critical value (4-mu)/6).
TrendReport optimality_sweep(double mu);

/// The default sweep grids.
std::vector<double> sweep_eps_grid();
std::vector<double> sweep_delta_grid(double mu);

// ---------------------------------------------------------------------------
// Instance checks of the four Sobolev-improved inequalities.

enum class InstanceKind {
  grad_sobolev_n3,  // mode-1, n=3: X^4-weighted L^6 gradient term
  grad_sobolev_n4,  // mode-1, n=4: plain L^4 gradient term
  hardy_sobolev,    // radial: first-order inequality with X-weighted L^{2n/(n-2)}
  rellich_sobolev   // radial, n>=5: second-order with X-weighted L^{2n/(n-4)}
};

/// LHS - constant * RHS for one profile; `constant` is the Sobolev-term
/// constant (calibrated for the gradient variants, closed-form otherwise).
double instance_check(InstanceKind kind, int n, const RadialProfile& u,
                      double constant, const WeightedQuadrature& quad);

/// Smallest LHS/RHS ratio over a seeded corpus: the empirical constant for
/// the gradient variants (the sharp constants there are not explicit).
double calibrate_constant(InstanceKind kind, int n, int count, std::uint64_t seed,
                          const WeightedQuadrature& quad);

/// Seeded corpora used by the instance checks.
std::vector<RadialProfile> radial_corpus(int count, std::uint64_t seed);
std::vector<RadialProfile> mode1_corpus(int count, std::uint64_t seed);

}  // namespace rellich

#endif
