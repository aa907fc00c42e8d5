#pragma once

#include <ostream>
#include <string>

#include "qsh/ncpoly.hpp"

namespace qsh {

namespace detail {

// One monomial c * h^e * w with c > 0; the sign is emitted by the caller.
inline std::string monomial_text(const Rational& magnitude, int hexp, const Word& w, const Alphabet& a) {
  std::string out;
  auto push = [&out](const std::string& part) {
    if (!out.empty()) out += ' ';
    out += part;
  };
  const bool unit = magnitude == 1;
  if (!unit || (hexp == 0 && w.empty())) push(to_string(magnitude));
  if (hexp == 1) push("h");
  else if (hexp != 0) push("h^" + std::to_string(hexp));
  if (!w.empty()) push(to_string(w, a));
  return out;
}

}  // namespace detail

/// Canonical text form, e.g. "3 e3 e2 + 2 h e2 e2 - h^2 e3 e0".
///
/// Terms follow the canonical word order; a coefficient with several powers
/// of h is split into one term per power, lowest power first. The output is
/// accepted by the expression parser.
inline std::string to_text(const NCPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [w, c] : p.terms()) {
    for (const auto& [e, r] : c.terms()) {
      const bool negative = sgn(r) < 0;
      if (out.empty()) {
        if (negative) out += '-';
      } else {
        out += negative ? " - " : " + ";
      }
      Rational mag = abs(r);
      out += detail::monomial_text(mag, e, w, *p.alphabet());
    }
  }
  return out;
}

inline std::string to_text(const Laurent& c) {
  if (c.is_zero()) return "0";
  std::string out;
  for (const auto& [e, r] : c.terms()) {
    const bool negative = sgn(r) < 0;
    if (out.empty()) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    Rational mag = abs(r);
    std::string m;
    if (mag != 1 || e == 0) m = to_string(mag);
    if (e != 0) {
      if (!m.empty()) m += ' ';
      m += e == 1 ? std::string("h") : "h^" + std::to_string(e);
    }
    out += m;
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const NCPoly& p) { return os << to_text(p); }
inline std::ostream& operator<<(std::ostream& os, const Laurent& c) { return os << to_text(c); }

}  // namespace qsh
