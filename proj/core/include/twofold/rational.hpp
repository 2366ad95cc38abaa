#pragma once
// Exact rational scalars used by the combinatorial and series layers.

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace twofold {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& q) { return q.convert_to<double>(); }

// q^e, with negative exponents allowed for nonzero q.
inline Rat rat_pow(const Rat& q, long e) {
  if (e < 0) {
    if (q == 0) throw std::domain_error("rat_pow: 0 to a negative power");
    Rat inv = Rat(denominator(q), numerator(q));
    return rat_pow(inv, -e);
  }
  Rat r = 1, base = q;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

inline BigInt binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

// Exact integer square root test.
inline bool int_sqrt(const BigInt& n, BigInt& out) {
  if (n < 0) return false;
  out = sqrt(n);
  return out * out == n;
}

// True (and sets out) iff q is the square of a rational.
inline bool rat_sqrt(const Rat& q, Rat& out) {
  BigInt sn, sd;
  if (!int_sqrt(numerator(q), sn) || !int_sqrt(denominator(q), sd)) return false;
  out = Rat(sn, sd);
  return true;
}

inline std::string rat_str(const Rat& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

// Accepts "p", "p/q" and plain decimal strings like "-0.25".
inline Rat rat_parse(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos)
    return Rat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rat(BigInt(s));
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  BigInt den = 1;
  for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
  return Rat(BigInt(digits), den);
}

}  // namespace twofold
