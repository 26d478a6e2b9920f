#include "rellich/laurent.hpp"

#include "rellich/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace rellich {

bool BPoly::is_zero() const {
  for (const auto& q : c)
    if (q != 0) return false;
  return true;
}

void BPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

Rational BPoly::eval(const Rational& b) const {
  Rational out = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) out = out * b + *it;
  return out;
}

double BPoly::eval(double b) const {
  double out = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) out = out * b + to_double(*it);
  return out;
}

BPoly& BPoly::operator+=(const BPoly& o) {
  if (o.c.size() > c.size()) c.resize(o.c.size());
  for (size_t j = 0; j < o.c.size(); ++j) c[j] += o.c[j];
  trim();
  return *this;
}

BPoly& BPoly::operator-=(const BPoly& o) {
  if (o.c.size() > c.size()) c.resize(o.c.size());
  for (size_t j = 0; j < o.c.size(); ++j) c[j] -= o.c[j];
  trim();
  return *this;
}

BPoly operator*(const BPoly& a, const BPoly& b) {
  BPoly out;
  if (a.c.empty() || b.c.empty()) return out;
  out.c.assign(a.c.size() + b.c.size() - 1, Rational(0));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) out.c[i + j] += a.c[i] * b.c[j];
  out.trim();
  return out;
}

bool operator==(const BPoly& a, const BPoly& b) {
  BPoly d = a;
  d -= b;
  return d.is_zero();
}

BPoly bpoly_monomial(Rational coeff, int power) {
  BPoly p;
  p.c.assign(power + 1, Rational(0));
  p.c[power] = std::move(coeff);
  p.trim();
  return p;
}

ExactLaurentPoly::ExactLaurentPoly(int n) : n_(n) {
  if (n < 5) throw std::domain_error("Laurent encoding requires n >= 5");
}

bool ExactLaurentPoly::is_zero() const { return terms_.empty(); }

void ExactLaurentPoly::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second.trim();
    if (it->second.is_zero())
      it = terms_.erase(it);
    else
      ++it;
  }
}

void ExactLaurentPoly::add_x_power(const BPoly& coeff, int num, int den) {
  long long e = static_cast<long long>(num) * unit_denominator();
  if (e % den != 0)
    throw std::invalid_argument("X power outside the exponent lattice");
  add_term(static_cast<int>(e / den), coeff);
}

void ExactLaurentPoly::add_term(int e, const BPoly& coeff) {
  if (coeff.is_zero()) return;
  terms_[e] += coeff;
  if (terms_[e].is_zero()) terms_.erase(e);
}

ExactLaurentPoly& ExactLaurentPoly::operator+=(const ExactLaurentPoly& o) {
  if (o.n_ != n_) throw std::invalid_argument("dimension mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

ExactLaurentPoly& ExactLaurentPoly::operator-=(const ExactLaurentPoly& o) {
  if (o.n_ != n_) throw std::invalid_argument("dimension mismatch");
  for (const auto& [e, c] : o.terms_) {
    BPoly neg;
    neg.c.resize(c.c.size());
    for (size_t j = 0; j < c.c.size(); ++j) neg.c[j] = -c.c[j];
    add_term(e, neg);
  }
  return *this;
}

ExactLaurentPoly operator*(const ExactLaurentPoly& a, const ExactLaurentPoly& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("dimension mismatch");
  ExactLaurentPoly out(a.n_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
  out.prune();
  return out;
}

bool operator==(const ExactLaurentPoly& a, const ExactLaurentPoly& b) {
  ExactLaurentPoly d = a;
  d -= b;
  return d.is_zero();
}

double ExactLaurentPoly::eval(double X, double b) const {
  double out = 0.0;
  double lu = std::log(X) / unit_denominator();
  for (const auto& [e, c] : terms_) out += c.eval(b) * std::exp(e * lu);
  return out;
}

namespace {

Rational q(int v) { return Rational(v); }


Rational p1_of(int n) { return q(n) * (q(n) * n - 4 * n + 8) / (4 * (n - 1)); }
Rational p2_b2_of(int n) {
  // coefficient of b^2 in p2
  return -rat_pow(q(n), 3) * (q(n) * n - 4 * n + 8) /
         (16 * rat_pow(q(n - 1), 3));
}
Rational p3_of(int n) {
  return q(5) * n * (n - 2) * (3 * n - 2) / (16 * rat_pow(q(n - 1), 3));
}

}  // namespace

ExactLaurentPoly encode(int n, EncodedFunction which) {
  ExactLaurentPoly p(n);
  const Rational n2m4n8 = q(n) * n - 4 * n + 8;   // n^2 - 4n + 8
  const Rational nm1 = q(n - 1);
  const Rational n2m4 = q(n) * n - 4;

  switch (which) {
    case EncodedFunction::G: {
      p.add_x_power(BPoly(p1_of(n)), 4 - 2 * n, n);
      // - n^3 (2s^2 + 2s + 1) / (8(n-1)^3), s = (n-4) b / 2
      Rational lead = -rat_pow(q(n), 3) / (8 * rat_pow(nm1, 3));
      BPoly c0;
      c0.c = {lead, lead * (n - 4), lead * (n - 4) * (n - 4) / 2};
      p.add_x_power(c0, 0, 1);
      p.add_x_power(BPoly(p3_of(n)), 2, 1);
      break;
    }
    case EncodedFunction::Gsharp: {
      p.add_x_power(BPoly(p1_of(n)), 4 - 2 * n, n);
      p.add_x_power(bpoly_monomial(p2_b2_of(n), 2), 0, 1);
      p.add_x_power(BPoly(p3_of(n)), 2, 1);
      break;
    }
    case EncodedFunction::H: {
      p.add_x_power(bpoly_monomial(-q(n) * (n - 4) * (n - 4) * n2m4n8 / (16 * nm1), 2),
                    4 - 2 * n, n);
      p.add_x_power(bpoly_monomial(q(n - 2) * (n - 4) * n2m4n8 / (4 * nm1), 1),
                    4 - n, n);
      p.add_x_power(
          bpoly_monomial(rat_pow(q(n), 3) * rat_pow(q(n - 4), 4) / (128 * rat_pow(nm1, 3)), 4),
          0, 1);
      p.add_x_power(BPoly(q(3) * n2m4 * n2m4n8 / (16 * n * nm1)), 4, n);
      p.add_x_power(
          bpoly_monomial(-q(5) * n * (n - 2) * (3 * n - 2) * (n - 4) * (n - 4) /
                             (64 * rat_pow(nm1, 3)),
                         2),
          2, 1);
      p.add_x_power(
          bpoly_monomial(-q(5) * n * (n - 2) * (n - 4) * (3 * n - 2) / (16 * rat_pow(nm1, 3)), 1),
          3, 1);
      p.add_x_power(BPoly(-q(9) * (3 * n - 2) * (5 * n - 2) * n2m4 /
                          (128 * n * rat_pow(nm1, 3))),
                    4, 1);
      break;
    }
    case EncodedFunction::Hsharp: {
      p.add_x_power(bpoly_monomial(-q(n) * (n - 4) * (n - 4) * n2m4n8 / (16 * nm1), 2),
                    4 - 2 * n, n);
      p.add_x_power(bpoly_monomial(q(n - 2) * (n - 4) * n2m4n8 / (4 * nm1), 1),
                    4 - n, n);
      p.add_x_power(
          bpoly_monomial(rat_pow(q(n), 3) * (n - 4) * (n - 4) * n2m4n8 / (64 * rat_pow(nm1, 3)), 4),
          0, 1);
      p.add_x_power(BPoly(q(3) * n2m4 * n2m4n8 / (16 * n * nm1)), 4, n);
      p.add_x_power(
          bpoly_monomial(-q(n) * (n - 2) *
                             (q(15) * n * n * n - 104 * n * n + 256 * n - 152) /
                             (32 * rat_pow(nm1, 3)),
                         2),
          2, 1);
      p.add_x_power(
          bpoly_monomial(-q(5) * n * (n - 2) * (n - 4) * (3 * n - 2) / (16 * rat_pow(nm1, 3)), 1),
          3, 1);
      // Derived X^4 coefficient p3 r2 (r2 - 3) = 45 (n-2)^2 (3n-2)^2 / (64 n (n-1)^3).
      p.add_x_power(BPoly(q(45) * (n - 2) * (n - 2) * (3 * n - 2) * (3 * n - 2) /
                          (64 * n * rat_pow(nm1, 3))),
                    4, 1);
      break;
    }
    case EncodedFunction::K: {
      p.add_x_power(BPoly(nm1 * (n - 4)), 8 - 4 * n, n);
      p.add_x_power(bpoly_monomial(-q(n) * (n - 4) * (n - 4) / (4 * nm1), 2),
                    4 - 2 * n, n);
      p.add_x_power(bpoly_monomial(q(n - 2) * (n - 4) / nm1, 1), 4 - n, n);
      p.add_x_power(BPoly(q(3) * n2m4 / (4 * n * nm1)), 4, n);
      break;
    }
  }
  return p;
}

ExactLaurentPoly tderive(const ExactLaurentPoly& p, const BPoly& power_coeff) {
  ExactLaurentPoly out(p.n());
  const int unit = p.unit_denominator();
  for (const auto& [e, c] : p.terms()) {
    out.add_term(e, c * power_coeff);
    // X * (X d/dX): multiplies by e/unit and shifts the exponent by one X
    Rational factor = Rational(e) / unit;
    if (factor != 0) {
      BPoly shifted;
      shifted.c.resize(c.c.size());
      for (size_t j = 0; j < c.c.size(); ++j) shifted.c[j] = c.c[j] * factor;
      out.add_term(e + unit, shifted);
    }
  }
  return out;
}

IdentityCheck check_gsharp_form(int n, const Rational& p2_shift) {
  IdentityCheck out{"gsharp-decomposition", n, CheckStatus::fail, 0, "", 0};
  ExactLaurentPoly lhs = encode(n, EncodedFunction::G);
  // (n/(2(n-1)))^3 * A(b), A(b) = (2n-4) b^2 - (n-4) b - 1
  Rational cube = rat_pow(Rational(n) / (2 * (n - 1)), 3);
  BPoly A;
  A.c = {-cube, -cube * (n - 4), cube * (2 * n - 4)};
  ExactLaurentPoly a_poly(n);
  a_poly.add_x_power(A, 0, 1);
  lhs -= a_poly;

  ExactLaurentPoly rhs = encode(n, EncodedFunction::Gsharp);
  if (p2_shift != 0) {
    ExactLaurentPoly shift(n);
    shift.add_x_power(BPoly(p2_shift), 0, 1);
    rhs += shift;
  }
  lhs -= rhs;
  out.residual_terms = lhs.term_count();
  out.status = lhs.is_zero() ? CheckStatus::pass : CheckStatus::fail;
  return out;
}

IdentityCheck check_gamma_identity(int n, bool flip_gamma2) {
  IdentityCheck out{"gamma-identity", n, CheckStatus::fail, 0, "", 0};
  ExactLaurentPoly lhs = encode(n, EncodedFunction::H);
  lhs -= encode(n, EncodedFunction::Hsharp);
  // scale by n/(2(n-1))
  ExactLaurentPoly scaled(n);
  for (const auto& [e, c] : lhs.terms())
    scaled.add_term(e, c * BPoly(Rational(n) / (2 * (n - 1))));

  ExactLaurentPoly rhs(n);
  Rational g2 = gamma2_exact(n);
  if (flip_gamma2) g2 = -g2;
  rhs.add_x_power(bpoly_monomial(-gamma1_exact(n), 4), 0, 1);
  rhs.add_x_power(bpoly_monomial(g2, 2), 2, 1);
  rhs.add_x_power(BPoly(-gamma3_exact(n)), 4, 1);

  scaled -= rhs;
  out.residual_terms = scaled.term_count();
  out.status = scaled.is_zero() ? CheckStatus::pass : CheckStatus::fail;
  return out;
}

IdentityCheck check_completion(int n, bool zero_r2) {
  IdentityCheck out{"square-completion", n, CheckStatus::fail, 0, "", 0};
  ExactLaurentPoly gs = encode(n, EncodedFunction::Gsharp);

  ExactLaurentPoly lin(n);  // r1 + r2 X
  lin.add_x_power(bpoly_monomial(Rational(n - 4) / 2, 1), 0, 1);
  if (!zero_r2)
    lin.add_x_power(BPoly(Rational(-3 * (n - 2)) / (2 * n)), 1, 1);

  ExactLaurentPoly gl = gs * lin;
  ExactLaurentPoly result = gl * lin;           // G# (r1 + r2 X)^2
  result -= tderive(gl, bpoly_monomial(Rational(n - 4), 1));

  result -= encode(n, EncodedFunction::Hsharp);
  out.residual_terms = result.term_count();
  out.status = result.is_zero() ? CheckStatus::pass : CheckStatus::fail;
  return out;
}

IdentityCheck check_gsharp_nonneg(int n, const Rational& beta_sq) {
  IdentityCheck out{"gsharp-nonnegative", n, CheckStatus::fail, 0, "", 0};
  if (beta_sq <= 0) throw std::domain_error("beta^2 must be positive");
  Rational p1 = p1_of(n), p3 = p3_of(n);
  Rational p2 = p2_b2_of(n) / beta_sq;  // b^2 = 1/beta^2
  // Sufficient condition for G# decreasing on (0,1]: p1 (2n-4)/n >= 2 p3.
  if (p1 * (2 * n - 4) / n < 2 * p3) {
    out.status = CheckStatus::inconclusive;
    out.detail = "monotonicity condition failed; minimum location unproven";
    return out;
  }
  out.min_value = p1 + p2 + p3;
  out.status = out.min_value >= 0 ? CheckStatus::pass : CheckStatus::fail;
  return out;
}

IdentityCheck check_weight_convexity(int n, bool double_gamma3) {
  IdentityCheck out{"weight-convexity", n, CheckStatus::fail, 0, "", 0};
  Rational beta = Rational(n) / (2 * (n - 1));
  Rational g1 = gamma1_exact(n), g2 = gamma2_exact(n), g3 = gamma3_exact(n);
  if (double_gamma3) g3 *= 2;
  Rational c1 = g2 * beta * beta / g1;
  Rational c2 = g3 * rat_pow(beta, 4) / g1;

  Rational c1_expected = Rational(3) * (n - 2) * (5 * n - 6) *
                         (Rational(n) * n - 4 * n + 8) /
                         (2 * Rational(n) * n * (n - 1) * (n - 1) * (n - 4) * (n - 4));
  Rational c2_expected = Rational(9) * (n - 2) * (3 * n - 2) * (5 * n - 6) *
                         (7 * n - 6) /
                         (16 * Rational(n) * n * rat_pow(Rational(n - 1), 4) *
                          (n - 4) * (n - 4));
  bool coeffs_ok = (c1 == c1_expected) && (c2 == c2_expected);
  // q(y) = 1 - c1 y + c2 y^2: convex, q(0) = 1, need q(1) <= 1.
  bool convex = c2 > 0;
  bool endpoint = (1 - c1 + c2) <= 1;
  out.status = (coeffs_ok && convex && endpoint) ? CheckStatus::pass : CheckStatus::fail;
  if (!coeffs_ok) out.detail = "rewrite coefficients do not match";
  return out;
}

IdentityCheck check_K_lower_bound(int n) {
  IdentityCheck out{"K-lower-bound", n, CheckStatus::fail, 0, "", 0};
  // In y = X^{(4-2n)/n}: (n-1)(n-4) y^2 - ((n-1)(n-4)^2/n) y - 4(n-1)(n-4)/n
  // == (n-1)(n-4) (y - 1)(y + 4/n).
  Rational lead = Rational(n - 1) * (n - 4);
  std::vector<Rational> lhs = {-4 * lead / n, -lead * (n - 4) / n, lead};
  std::vector<Rational> rhs = {lead * (-1) * Rational(4) / n,
                               lead * (Rational(4) / n - 1), lead};
  bool factorization = lhs == rhs;
  // Dropped K-terms at beta = n/(2(n-1)): both coefficients positive.
  Rational beta = Rational(n) / (2 * (n - 1));
  Rational drop1 = Rational(n - 2) * (n - 4) / ((n - 1) * beta);
  Rational drop2 = Rational(3) * (Rational(n) * n - 4) / (4 * n * (n - 1));
  bool dropped_positive = drop1 > 0 && drop2 > 0;
  out.status = (factorization && dropped_positive) ? CheckStatus::pass : CheckStatus::fail;
  return out;
}

std::vector<IdentityCheck> identity_suite(int n) {
  std::vector<IdentityCheck> out;
  out.push_back(check_gsharp_form(n));
  out.push_back(check_gamma_identity(n));
  out.push_back(check_completion(n));
  out.push_back(check_gsharp_nonneg(n, beta_n_sq_exact(n)));
  {
    auto strict = check_gsharp_nonneg(n, rat_pow(Rational(n) / (2 * (n - 1)), 2));
    strict.name = "gsharp-positive-at-chosen-beta";
    // at beta = n/(2(n-1)) > beta_n the minimum must be strictly positive
    if (strict.status == CheckStatus::pass && !(strict.min_value > 0))
      strict.status = CheckStatus::fail;
    out.push_back(strict);
  }
  out.push_back(check_weight_convexity(n));
  out.push_back(check_K_lower_bound(n));
  return out;
}

}  // namespace rellich
