#ifndef RELLICH_LAURENT_HPP
#define RELLICH_LAURENT_HPP

#include "rellich/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace rellich {

/// Polynomial in b = 1/beta with exact rational coefficients.
struct BPoly {
  std::vector<Rational> c;  // c[j] * b^j

  BPoly() = default;
  BPoly(Rational c0) : c{std::move(c0)} {}

  bool is_zero() const;
  void trim();
  Rational eval(const Rational& b) const;
  double eval(double b) const;

  BPoly& operator+=(const BPoly& o);
  BPoly& operator-=(const BPoly& o);
  friend BPoly operator+(BPoly a, const BPoly& b) { return a += b; }
  friend BPoly operator-(BPoly a, const BPoly& b) { return a -= b; }
  friend BPoly operator*(const BPoly& a, const BPoly& b);
  friend bool operator==(const BPoly& a, const BPoly& b);
};

BPoly bpoly_monomial(Rational coeff, int power);

/// Exact Laurent polynomial in xi = X^{1/(2n(n-1))} whose coefficients are
/// BPoly values.  The exponent unit 1/(2n(n-1)) is a common denominator for
/// every X-power appearing in G, H, K, G#, H# and the convexity rewrite, so
/// all exponent arithmetic stays in integers.
class ExactLaurentPoly {
 public:
  explicit ExactLaurentPoly(int n);

  int n() const { return n_; }
  int unit_denominator() const { return 2 * n_ * (n_ - 1); }

  bool is_zero() const;
  int term_count() const { return static_cast<int>(terms_.size()); }
  const std::map<int, BPoly>& terms() const { return terms_; }

  /// Adds coeff * X^{num/den}; num/den must reduce into the exponent lattice.
  void add_x_power(const BPoly& coeff, int num, int den);
  void add_term(int lattice_exponent, const BPoly& coeff);

  ExactLaurentPoly& operator+=(const ExactLaurentPoly& o);
  ExactLaurentPoly& operator-=(const ExactLaurentPoly& o);
  friend ExactLaurentPoly operator+(ExactLaurentPoly a, const ExactLaurentPoly& b) { return a += b; }
  friend ExactLaurentPoly operator-(ExactLaurentPoly a, const ExactLaurentPoly& b) { return a -= b; }
  friend ExactLaurentPoly operator*(const ExactLaurentPoly& a, const ExactLaurentPoly& b);
  friend bool operator==(const ExactLaurentPoly& a, const ExactLaurentPoly& b);

  double eval(double X, double b) const;

 private:
  int n_;
  std::map<int, BPoly> terms_;  // lattice exponent -> coefficient
  void prune();
};

enum class EncodedFunction { G, H, K, Gsharp, Hsharp };

/// Term-by-term encoding of the radial-part weight functions, with
/// s = (n-4) b / 2 substituted so coefficients are polynomials in b.
ExactLaurentPoly encode(int n, EncodedFunction which);

/// t^{1 - (n-4)/beta} d/dt [ t^{(n-4)/beta} p(X(t)) ]
///   = power_coeff * p + X * (X dp/dX), exactly.
ExactLaurentPoly tderive(const ExactLaurentPoly& p, const BPoly& power_coeff);

enum class CheckStatus { pass, fail, inconclusive };

struct IdentityCheck {
  std::string name;
  int n = 0;
  CheckStatus status = CheckStatus::fail;
  int residual_terms = 0;      // nonzero lattice terms left after cancellation
  std::string detail;
  Rational min_value;          // used by the nonnegativity check
};

/// G - (n/(2(n-1)))^3 A(b) == p1 X^{(4-2n)/n} + p2(b) + p3 X^2 exactly,
/// with A(b) = (2n-4) b^2 - (n-4) b - 1.  p2_shift perturbs p2 (negative
/// control hook).
IdentityCheck check_gsharp_form(int n, const Rational& p2_shift = 0);

/// (n/(2(n-1))) (H - H#) == -gamma1 b^4 + gamma2 b^2 X^2 - gamma3 X^4.
IdentityCheck check_gamma_identity(int n, bool flip_gamma2 = false);

/// Replays the weighted square completion: H# must equal
/// G# (r1 + r2 X)^2 - tderive(G# (r1 + r2 X), (n-4) b) with
/// r1 = (n-4) b / 2, r2 = -3(n-2)/(2n).
IdentityCheck check_completion(int n, bool zero_r2 = false);

/// Minimum of G# over (0,1] equals p1+p2+p3; requires the sufficient
/// monotonicity condition p1 (2n-4)/n >= 2 p3 (else: inconclusive).
/// Passes iff the minimum is >= 0 at the given beta^2.
IdentityCheck check_gsharp_nonneg(int n, const Rational& beta_sq);

/// At beta = n/(2(n-1)): the two rewrite coefficients gamma2 beta^2/gamma1
/// and gamma3 beta^4/gamma1 match their closed forms, and the quadratic
/// q(y) = 1 - c1 y + c2 y^2 is convex with q(0) <= 1 and q(1) <= 1.
IdentityCheck check_weight_convexity(int n, bool double_gamma3 = false);

/// With y = X^{(4-2n)/n} >= 1 and beta = n/(2(n-1)): the first two K-terms
/// minus the target constant factor exactly as
/// (n-1)(n-4)(y-1)(y+4/n), and the dropped K-terms have positive
/// coefficients; hence K >= 4(n-1)(n-4)/n on (0,1).
IdentityCheck check_K_lower_bound(int n);

/// The full per-dimension suite in a fixed order.
std::vector<IdentityCheck> identity_suite(int n);

}  // namespace rellich

#endif
