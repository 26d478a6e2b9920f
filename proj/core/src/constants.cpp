#include "rellich/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace rellich {

Dimension::Dimension(int n_) : n(n_) {
  if (n < 3) throw std::domain_error("dimension must satisfy n >= 3");
}

void Dimension::require_at_least_5(const char* what) const {
  if (n < 5) throw std::domain_error(std::string(what) + " requires n >= 5");
}

double x_of_r(double r) {
  if (!(r > 0.0) || r > 1.0) throw std::domain_error("x_of_r: r must lie in (0,1]");
  return 1.0 / (1.0 - std::log(r));
}

Rational c_n_exact(int n) {
  if (n < 3) throw std::domain_error("c_n requires n >= 3");
  if (n == 3) return rat(25, 36);
  if (n == 4) return rat(3);
  return Rational(n) * n / 4;
}

Rational rellich_u_exact(int n) {
  Dimension(n).require_at_least_5("rellich constant");
  return Rational(n) * n * (n - 4) * (n - 4) / 16;
}

Rational beta_n_sq_exact(int n) {
  Dimension(n).require_at_least_5("beta_n");
  BigInt n2 = BigInt(n) * n;
  BigInt num = n2 * (n2 - 4 * n + 8);
  BigInt den = 4 * n2 * n2 - 24 * n2 * n + 83 * n2 - 120 * n + 52;
  return Rational(num, den);
}

Rational gamma1_exact(int n) {
  Dimension(n).require_at_least_5("gamma1");
  return Rational(rat_pow(Rational(n), 6) * (n - 4) * (n - 4)) /
         (256 * rat_pow(Rational(n - 1), 4));
}

Rational gamma2_exact(int n) {
  Dimension(n).require_at_least_5("gamma2");
  return Rational(3) * n * n * (n - 2) * (5 * n - 6) *
         (Rational(n) * n - 4 * n + 8) / (128 * rat_pow(Rational(n - 1), 4));
}

Rational gamma3_exact(int n) {
  Dimension(n).require_at_least_5("gamma3");
  return Rational(9) * (n - 2) * (3 * n - 2) * (5 * n - 6) * (7 * n - 6) /
         (256 * rat_pow(Rational(n - 1), 4));
}

ConstantsBundle constants(int n, const Rational& beta) {
  Dimension dim(n);
  if (beta <= 0) throw std::domain_error("beta must be positive");

  ConstantsBundle out;
  out.n = n;
  out.beta = beta;
  out.c_n = c_n_exact(n);
  if (n >= 5) {
    out.rellich_u = rellich_u_exact(n);
    out.beta_n_sq = beta_n_sq_exact(n);
    out.gamma1 = gamma1_exact(n);
    out.gamma2 = gamma2_exact(n);
    out.gamma3 = gamma3_exact(n);
    out.A = Rational(2 * n - 4) / (beta * beta) - Rational(n - 4) / beta - 1;
    out.s = Rational(n - 4) / (2 * beta);
  }
  auto sob = sobolev_constants(n);
  out.S1n = sob.S1n;
  if (n >= 5) {
    out.S2n = sob.S2n;
    out.S2n_alternate = sob.S2n_alternate;
  }
  return out;
}

SobolevConstants sobolev_constants(int n) {
  if (n < 3) throw std::domain_error("sobolev constants require n >= 3");
  double lg = std::lgamma(n / 2.0) - std::lgamma(static_cast<double>(n));
  SobolevConstants out{};
  out.S1n = M_PI * n * (n - 2) * std::exp(2.0 / n * lg);
  if (n >= 5) {
    double lead = M_PI * M_PI * (static_cast<double>(n) * n - 4 * n) *
                  (static_cast<double>(n) * n - 4);
    out.S2n = lead * std::exp(4.0 * lg);
    out.S2n_alternate = lead * std::exp(4.0 / n * lg);
  } else {
    out.S2n = out.S2n_alternate = 0.0;
  }
  return out;
}

}  // namespace rellich
