#pragma once

// Exact rational scalars. Everything on the exact path is an mpq_class kept in
// canonical form (lowest terms, positive denominator).

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace wgcalc {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// "p/q" in lowest terms with q > 0; integers are printed without "/1".
inline std::string to_string(const Rational& r) {
  Rational c(r);
  c.canonicalize();
  return c.get_str();
}

// Accepts "p", "p/q", and decimal-free signed forms such as "-3/4".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (r.get_den() == 0) throw std::domain_error("zero denominator: " + s);
  r.canonicalize();
  return r;
}

inline Rational pow(const Rational& base, unsigned exponent) {
  Rational out(1);
  Rational b(base);
  while (exponent != 0) {
    if (exponent & 1u) out *= b;
    b *= b;
    exponent >>= 1u;
  }
  return out;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline Integer factorial(unsigned n) {
  Integer out(1);
  for (unsigned i = 2; i <= n; ++i) out *= i;
  return out;
}

}  // namespace wgcalc
