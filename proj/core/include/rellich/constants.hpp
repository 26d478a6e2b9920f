#ifndef RELLICH_CONSTANTS_HPP
#define RELLICH_CONSTANTS_HPP

#include "rellich/rational.hpp"

#include <optional>

namespace rellich {

/// Space dimension; every formula in the library is parameterized by it.
struct Dimension {
  int n;
  explicit Dimension(int n_);
  /// Throws std::domain_error unless n >= 5.
  void require_at_least_5(const char* what) const;
};

/// Logarithmic weight X(r) = (1 - log r)^{-1} on (0,1]; dX/dr = X^2/r.
double x_of_r(double r);

/// Closed-form constants of the gradient/potential Rellich inequalities and
/// their Sobolev improvements.  All rational fields are exact; beta_n_sq is
/// n^2 (n^2-4n+8) / (4n^4-24n^3+83n^2-120n+52).  Fields that only make sense
/// for n >= 5 are absent below dimension 5.
struct ConstantsBundle {
  int n = 0;
  Rational c_n;                          // 25/36, 3, n^2/4
  std::optional<Rational> rellich_u;     // n^2 (n-4)^2 / 16
  std::optional<Rational> beta_n_sq;
  std::optional<Rational> gamma1, gamma2, gamma3;
  std::optional<Rational> A;             // (2n-4)/beta^2 - (n-4)/beta - 1
  std::optional<Rational> s;             // (n-4)/(2 beta)
  Rational beta;
  double S1n = 0.0;                      // best constant, gradient Sobolev
  std::optional<double> S2n;             // printed Gamma-ratio power 4
  std::optional<double> S2n_alternate;   // pattern-consistent power 4/n
};

ConstantsBundle constants(int n, const Rational& beta);

struct SobolevConstants {
  double S1n;
  double S2n;            // Gamma-ratio exponent 4, as printed
  double S2n_alternate;  // Gamma-ratio exponent 4/n
};

/// S1n = pi n(n-2) (Gamma(n/2)/Gamma(n))^{2/n} for n >= 3.  The second-order
/// constant is returned under both readings of the Gamma-ratio exponent; the
/// extremals module resolves which one the concentrating bubble selects.
SobolevConstants sobolev_constants(int n);

Rational c_n_exact(int n);
Rational rellich_u_exact(int n);
Rational beta_n_sq_exact(int n);
Rational gamma1_exact(int n);
Rational gamma2_exact(int n);
Rational gamma3_exact(int n);

}  // namespace rellich

#endif
