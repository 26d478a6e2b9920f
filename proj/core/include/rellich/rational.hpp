#ifndef RELLICH_RATIONAL_HPP
#define RELLICH_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>

namespace rellich {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rat(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  return Rational(num, den);
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Rational rat_pow(const Rational& base, int e) {
  if (e < 0) {
    if (base == 0) throw std::domain_error("0^negative");
    return 1 / rat_pow(base, -e);
  }
  Rational out = 1, b = base;
  while (e > 0) {
    if (e & 1) out *= b;
    b *= b;
    e >>= 1;
  }
  return out;
}

inline BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt out = 1;
  for (int i = 0; i < k; ++i) {
    out *= (n - i);
    out /= (i + 1);
  }
  return out;
}

}  // namespace rellich

#endif
