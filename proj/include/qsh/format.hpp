#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsh/relations.hpp"
#include "qsh/series.hpp"
#include "qsh/text.hpp"

namespace qsh {

using json = nlohmann::json;

namespace detail {

inline std::string power_text(const char* var, int k) {
  if (k == 1) return var;
  return std::string(var) + "^" + std::to_string(k);
}

// Appends one signed monomial: `factors` is the '*'-joined variable part
// (empty for a constant).
inline void append_monomial(std::string& out, const Rational& c, const std::string& factors) {
  const bool negative = sgn(c) < 0;
  if (out.empty()) {
    if (negative) out += '-';
  } else {
    out += negative ? " - " : " + ";
  }
  Rational mag = abs(c);
  if (factors.empty()) out += to_string(mag);
  else if (mag == 1) out += factors;
  else out += to_string(mag) + "*" + factors;
}

}  // namespace detail

/// "q + q^2 + q^4 - q^5 + O(q^6)".
inline std::string to_text(const QSeries& s) {
  std::string out;
  for (int k = 0; k <= s.order(); ++k) {
    const Rational& c = s.coefficients()[static_cast<std::size_t>(k)];
    if (sgn(c) == 0) continue;
    detail::append_monomial(out, c, k == 0 ? std::string() : detail::power_text("q", k));
  }
  const std::string tail = "O(" + detail::power_text("q", s.order() + 1) + ")";
  return out.empty() ? tail : out + " + " + tail;
}

/// Terms by power of z, then of q: "z + q*z^2 + ... + O(q^31, z^31)".
inline std::string to_text(const QZSeries& g) {
  std::string out;
  for (int m = 0; m <= g.order_z(); ++m) {
    const auto& row = g.row(m).coefficients();
    for (std::size_t u = 0; u < row.size(); ++u) {
      if (sgn(row[u]) == 0) continue;
      std::string f;
      if (u > 0) f = detail::power_text("q", static_cast<int>(u));
      if (m > 0) f += (f.empty() ? "" : "*") + detail::power_text("z", m);
      detail::append_monomial(out, row[u], f);
    }
  }
  const std::string tail =
      "O(" + detail::power_text("q", g.order_q() + 1) + ", " + detail::power_text("z", g.order_z() + 1) + ")";
  return out.empty() ? tail : out + " + " + tail;
}

/// Decimal form with 15 significant digits.
inline std::string to_text(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

inline json to_json(const Laurent& c) {
  json hp = json::object();
  for (const auto& [e, r] : c.terms()) hp[std::to_string(e)] = to_fraction_string(r);
  return json{{"hpowers", hp}};
}

/// {"alphabet": "E", "terms": [{"coeff": {"hpowers": {"1": "2/1"}}, "word": ["e2", "e2"]}, ...]}
inline json to_json(const NCPoly& p) {
  json terms = json::array();
  for (const auto& [w, c] : p.terms()) {
    json word = json::array();
    for (const auto& l : w) word.push_back(p.alphabet()->symbol(l));
    terms.push_back(json{{"coeff", to_json(c)}, {"word", word}});
  }
  return json{{"alphabet", p.alphabet()->name()}, {"terms", terms}};
}

inline Laurent laurent_from_json(const json& j) {
  Laurent c;
  for (const auto& [e, r] : j.at("hpowers").items()) c.add(std::stoi(e), parse_rational(r.get<std::string>()));
  return c;
}

/// Inverse of to_json(NCPoly); `alphabet` is used when the payload names none.
inline NCPoly poly_from_json(const json& j, AlphabetRef alphabet = nullptr) {
  if (j.contains("alphabet")) alphabet = alphabets::by_name(j.at("alphabet").get<std::string>());
  if (!alphabet) throw std::invalid_argument("JSON polynomial names no alphabet");
  NCPoly p(alphabet);
  for (const auto& t : j.at("terms")) {
    std::vector<Letter> v;
    for (const auto& s : t.at("word")) v.push_back(alphabet->letter(s.get<std::string>()));
    p += NCPoly(alphabet, Word(std::move(v)), laurent_from_json(t.at("coeff")));
  }
  return p;
}

inline json to_json(const QSeries& s) {
  json c = json::array();
  for (const auto& r : s.coefficients()) c.push_back(to_fraction_string(r));
  return json{{"order", s.order()}, {"coeffs", c}};
}

inline QSeries qseries_from_json(const json& j) {
  const int order = j.at("order").get<int>();
  std::vector<Rational> c;
  for (const auto& r : j.at("coeffs")) c.push_back(parse_rational(r.get<std::string>()));
  return QSeries::from_coefficients(c, order);
}

inline json to_json(const QZSeries& g) {
  json rows = json::array();
  for (int m = 0; m <= g.order_z(); ++m) rows.push_back(to_json(g.row(m)).at("coeffs"));
  return json{{"order_q", g.order_q()}, {"order_z", g.order_z()}, {"rows", rows}};
}

inline QZSeries qzseries_from_json(const json& j) {
  QZSeries g(j.at("order_q").get<int>(), j.at("order_z").get<int>());
  int m = 0;
  for (const auto& row : j.at("rows")) {
    std::vector<Rational> c;
    for (const auto& r : row) c.push_back(parse_rational(r.get<std::string>()));
    g.row(m++) = QSeries::from_coefficients(c, g.order_q());
  }
  return g;
}

inline json to_json(const CheckResult& r) {
  json j{{"check_id", r.check_id}, {"inputs", r.inputs}, {"status", to_string(r.status)}};
  j["residual"] = r.residual ? json(*r.residual) : json(nullptr);
  j["witness"] = r.witness.empty() ? json(nullptr) : json(r.witness);
  return j;
}

/// "exact-pass", "numeric-pass residual=1.3e-04", or "fail" followed by the witness.
inline std::string to_text(const CheckResult& r) {
  std::string out = to_string(r.status);
  if (r.status == CheckStatus::numeric_pass && r.residual) {
    char buf[48];
    std::snprintf(buf, sizeof buf, " residual=%.3e", *r.residual);
    out += buf;
  }
  if (r.status == CheckStatus::fail) {
    if (r.residual) {
      char buf[48];
      std::snprintf(buf, sizeof buf, " residual=%.3e", *r.residual);
      out += buf;
    }
    out += "\nwitness: " + r.witness;
  }
  return out;
}

inline json to_json(const DsRelation& r) {
  return json{{"u", to_text(r.u)}, {"v", to_text(r.v)}, {"relation", to_json(r.relation)}, {"residual", r.residual}};
}

}  // namespace qsh
