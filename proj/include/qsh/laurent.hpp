#pragma once

#include <map>
#include <utility>

#include "qsh/rational.hpp"

namespace qsh {

/// Element of Q[h, h^-1], where h stands for the formal variable hbar.
///
/// Stored sparsely as exponent -> nonzero rational. The zero element has no
/// terms. Elements with only the exponent-0 term model plain rationals.
class Laurent {
 public:
  using TermMap = std::map<int, Rational>;

  Laurent() = default;
  Laurent(const Rational& c) { set(0, c); }  // NOLINT(implicit)
  Laurent(int c) : Laurent(Rational(c)) {}   // NOLINT(implicit)

  static Laurent hbar(int exponent = 1, const Rational& c = Rational(1)) {
    Laurent out;
    out.set(exponent, c);
    return out;
  }

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// True iff no nonzero power of h occurs.
  bool is_rational() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
  }

  Rational coefficient(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational constant_term() const { return coefficient(0); }

  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1;
  }

  void add(int exponent, const Rational& c) {
    if (is_zero_rational(c)) return;
    auto [it, inserted] = terms_.try_emplace(exponent, c);
    if (!inserted) {
      it->second += c;
      if (is_zero_rational(it->second)) terms_.erase(it);
    }
  }

  Laurent& operator+=(const Laurent& o) {
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    for (const auto& [e, c] : o.terms_) add(e, -c);
    return *this;
  }
  Laurent& operator*=(const Laurent& o) {
    *this = *this * o;
    return *this;
  }

  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator-(Laurent a) {
    for (auto& [e, c] : a.terms_) c = -c;
    return a;
  }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent out;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out.add(ea + eb, Rational(ca * cb));
    return out;
  }
  friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }

 private:
  static bool is_zero_rational(const Rational& c) { return sgn(c) == 0; }

  void set(int exponent, const Rational& c) {
    if (!is_zero_rational(c)) terms_[exponent] = c;
  }

  TermMap terms_;
};

}  // namespace qsh
