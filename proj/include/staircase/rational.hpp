#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "staircase/errors.hpp"

namespace staircase {

using Integer = mpz_class;
using Rational = mpq_class;

/// num/den in canonical form (the two-argument mpq_class constructor does not reduce).
template <class N, class D>
Rational ratio(const N& num, const D& den) {
  Rational q{Integer(num), Integer(den)};
  if (q.get_den() == 0)
    throw DomainError("zero denominator");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Parses "p", "p/q", "-p/q" or a plain decimal such as "0.25" into a canonical rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty())
    throw ParameterError("empty rational");
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos)
      throw ParameterError("cannot mix '/' and '.' in \"" + s + "\"");
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    if (digits.empty() || digits == "-" || digits == "+")
      throw ParameterError("malformed decimal \"" + s + "\"");
    Integer num;
    if (num.set_str(digits[0] == '+' ? digits.substr(1) : digits, 10) != 0)
      throw ParameterError("malformed decimal \"" + s + "\"");
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, s.size() - dot - 1);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  Rational q;
  if (s[0] == '+')
    s.erase(0, 1);
  if (q.set_str(s, 10) != 0)
    throw ParameterError("malformed rational \"" + std::string(text) + "\"");
  if (q.get_den() == 0)
    throw ParameterError("zero denominator in \"" + std::string(text) + "\"");
  q.canonicalize();
  return q;
}

/// A nonnegative rational extended by +infinity.
struct ExtRational {
  bool infinite = false;
  Rational value = 0;

  static ExtRational inf() { return {true, 0}; }
  static ExtRational finite(Rational v) { return {false, std::move(v)}; }

  bool is_zero() const { return !infinite && value == 0; }
  bool operator==(const ExtRational& o) const {
    return infinite == o.infinite && (infinite || value == o.value);
  }

  /// 1/x with 1/0 = inf and 1/inf = 0.
  ExtRational reciprocal() const {
    if (infinite)
      return finite(0);
    if (value == 0)
      return inf();
    return finite(1 / value);
  }
};

inline ExtRational parse_ext_rational(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "oo")
    return ExtRational::inf();
  return ExtRational::finite(parse_rational(text));
}

inline std::string to_string(const ExtRational& x) {
  return x.infinite ? std::string("inf") : x.value.get_str();
}

/// x(x+1)...(x+n-1); 1 for n = 0.
inline Rational rising_factorial(const Rational& x, unsigned n) {
  Rational r = 1;
  for (unsigned i = 0; i < n; ++i)
    r *= x + i;
  return r;
}

inline Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

/// (2n+1)!! = 1*3*...*(2n+1).
inline Integer odd_double_factorial(unsigned n) {
  Integer r = 1;
  for (unsigned i = 1; i <= n; ++i)
    r *= 2 * i + 1;
  return r;
}

/// base^e with the convention 0^0 = 1.
inline Rational pow(const Rational& base, unsigned e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
  return r;
}

/// Double approximation of num/den that survives numbers far beyond double range.
inline double ratio_to_double(const Integer& num, const Integer& den) {
  if (num == 0)
    return 0.0;
  long en = 0;
  long ed = 0;
  double mn = mpz_get_d_2exp(&en, num.get_mpz_t());
  double md = mpz_get_d_2exp(&ed, den.get_mpz_t());
  return std::ldexp(mn / md, static_cast<int>(en - ed));
}

inline double to_double(const Rational& q) {
  return ratio_to_double(q.get_num(), q.get_den());
}

inline void require_nonnegative(const Rational& x, const char* name) {
  if (x < 0)
    throw ParameterError(std::string(name) + " must be nonnegative, got " + x.get_str());
}

} // namespace staircase
