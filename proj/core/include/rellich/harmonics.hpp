#ifndef RELLICH_HARMONICS_HPP
#define RELLICH_HARMONICS_HPP

#include "rellich/quadrature.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace rellich {

/// Spherical-harmonic mode: Laplace-Beltrami eigenvalue mu = k(k+n-2) and
/// multiplicity d_k = C(n+k-1,k) - C(n+k-3,k-2), d_0 = 1, d_1 = n.
struct ModeSpec {
  int n = 0;
  int k = 0;
  std::int64_t mu = 0;
  std::int64_t d = 0;
};

ModeSpec mode(int n, int k);

/// A radial profile on (0,1): f, f', f'' at a point, the vanishing order at
/// the origin, and the right end of the support.  Closed-form test bumps and
/// finite-element eigenvectors both sit behind this interface.
struct RadialProfile {
  int vanishing_order = 0;
  double support_end = 1.0;
  std::function<std::array<double, 3>(double r)> eval;

  std::array<double, 3> operator()(double r) const { return eval(r); }
};

/// Polynomial bump r^m (1-r)^2 (a0 + a1 r + ...) with exact derivatives.
RadialProfile poly_bump(int m, const std::vector<double>& coeffs);

/// Seeded corpus of polynomial bumps r^{max(k,2)} (1-r)^2 * (random cubic).
std::vector<RadialProfile> random_profile_corpus(int k, int count,
                                                 std::uint64_t seed);

/// integral r^{n-1} f''^2 + (n-1+2mu) integral r^{n-3} f'^2
///   + (2(n-4)mu + mu^2) integral r^{n-5} f^2
/// i.e. the (Delta u)^2 energy of u = f * (orthonormal mode-k harmonic).
double bilap_form(const ModeSpec& mode, const RadialProfile& f,
                  const WeightedQuadrature& quad);

/// integral r^{n-3} f'^2 + mu integral r^{n-5} f^2, the |grad u|^2/|x|^2 mass.
double gradhardy_form(const ModeSpec& mode, const RadialProfile& f,
                      const WeightedQuadrature& quad);

/// integral r^{n-5} f^2, the u^2/|x|^4 mass of the mode.
double hardy4_form(const ModeSpec& mode, const RadialProfile& f,
                   const WeightedQuadrature& quad);

/// Sum over the supplied modes of bilap - c_n * gradhardy for n = 3 or 4;
/// nonnegative for admissible profiles.
double gradient_rellich_remainder(
    int n, const std::vector<std::pair<ModeSpec, RadialProfile>>& modes,
    const WeightedQuadrature& quad);

}  // namespace rellich

#endif
