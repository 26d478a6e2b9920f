#ifndef RELLICH_MELLIN_HPP
#define RELLICH_MELLIN_HPP

#include "rellich/harmonics.hpp"
#include "rellich/quadrature.hpp"

#include <vector>

namespace rellich {

/// Frequency point of the Emden-Fowler/Mellin substitution
/// f(r) = r^{(4-n)/2 + i tau}.
struct SymbolPoint {
  int n = 0;
  int k = 0;
  double tau = 0.0;
};

/// Density ratio (Delta u)^2 : |grad u|^2/|x|^2 of the mode-k Mellin wave,
///   Q_k(tau) = [ (tau^2 + mu_k + n(n-4)/4)^2 + 4 tau^2 ]
///              / [ tau^2 + mu_k + (n-4)^2/4 ].
/// Its minimum over (k, tau) is the best constant c_n.  Throws on the
/// denominator-zero point n = 4, k = 0, tau = 0.
double grad_symbol(const SymbolPoint& p);

/// Density ratio (Delta u)^2 : u^2/|x|^4 of the radial Mellin wave,
/// (tau^2 + n(n-4)/4)^2 + 4 tau^2; equals n^2(n-4)^2/16 at tau = 0.
double rellich_symbol(int n, double tau);

/// Numerical certificate for grad_symbol: integrates the mode-diagonal
/// quadratic forms on r^{(4-n)/2} cos(tau log r) under a Gaussian envelope
/// of the given width in log r and returns the relative deviation of the
/// Rayleigh quotient from the symbol value.  Decreases as the width grows.
double certify_symbol(const SymbolPoint& p, double envelope_width,
                      const WeightedQuadrature& quad);

/// Mellin wave with envelope, as a RadialProfile (also used to feed
/// near-extremal profiles to the form evaluators).
RadialProfile enveloped_wave(int n, double tau, double envelope_width);

struct ModeMinimum {
  int k_star = 0;
  double tau_star = 0.0;
  double value = 0.0;
  struct PerMode {
    int k;
    double min_value;
    double argmin_tau;
  };
  std::vector<PerMode> table;
  bool tail_monotone = false;  // per-mode minima increasing at the scan end
};

/// Per-mode minimization of grad_symbol over tau (grid scan + golden
/// section), then the global minimum over k <= k_max.
ModeMinimum minimize_modes(int n, int k_max = 12, double tau_max = 4.0,
                           int tau_steps = 200);

/// c = 1 - c_n / min_{k >= 2, tau} Q_k(tau) for n = 3, 4: the uniform
/// per-mode gap that controls all modes beyond the symmetry-breaking ones.
/// Throws if the computed constant fails to be positive.
double mode_gap_constant(int n, int k_max = 50);

}  // namespace rellich

#endif
