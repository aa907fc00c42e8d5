#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qsh {

/// Exact arbitrary-precision rational.
using Rational = mpq_class;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational r(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
  r.canonicalize();
  return r;
}

/// Accepts "n" or "n/d" with an optional leading sign.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
  if (r.get_den() == 0) throw std::domain_error("zero denominator: " + s);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Always "num/den", the form used in JSON payloads.
inline std::string to_fraction_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline Rational binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return Rational(0);
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return Rational(out);
}

}  // namespace qsh
