#pragma once

#include <map>
#include <string_view>
#include <utility>
#include <vector>

#include "qsh/alphabet.hpp"
#include "qsh/laurent.hpp"
#include "qsh/word.hpp"

namespace qsh {

/// Finite linear combination of words over one alphabet with coefficients in
/// Q[h, h^-1]. Always normalized: like words collected, zero coefficients
/// dropped, terms in canonical word order.
class NCPoly {
 public:
  using TermMap = std::map<Word, Laurent>;

  explicit NCPoly(AlphabetRef alphabet) : alphabet_(std::move(alphabet)) {}

  NCPoly(AlphabetRef alphabet, const Word& w, const Laurent& c = Laurent(1))
      : alphabet_(std::move(alphabet)) {
    check_word(w);
    add_term(w, c);
  }

  /// Collects an arbitrary (unnormalized) list of terms.
  static NCPoly from_terms(AlphabetRef alphabet, const std::vector<std::pair<Word, Laurent>>& terms) {
    NCPoly p(std::move(alphabet));
    for (const auto& [w, c] : terms) {
      p.check_word(w);
      p.add_term(w, c);
    }
    return p;
  }

  static NCPoly one(AlphabetRef alphabet) { return NCPoly(std::move(alphabet), Word{}); }

  static NCPoly letter(AlphabetRef alphabet, Letter l, const Laurent& c = Laurent(1)) {
    return NCPoly(std::move(alphabet), Word{l}, c);
  }

  const AlphabetRef& alphabet() const noexcept { return alphabet_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  Laurent coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Laurent() : it->second;
  }

  /// True iff no coefficient involves a nonzero power of h.
  bool is_rational() const {
    for (const auto& [w, c] : terms_)
      if (!c.is_rational()) return false;
    return true;
  }

  std::size_t max_length() const {
    std::size_t n = 0;
    for (const auto& [w, c] : terms_) n = std::max(n, w.size());
    return n;
  }

  /// Adds c*w, keeping the polynomial normalized. The word is not validated
  /// against the alphabet; use the constructors for untrusted input.
  void add_term(const Word& w, const Laurent& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  void add_term(Word&& w, const Laurent& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
      terms_.emplace(std::move(w), c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  NCPoly& operator+=(const NCPoly& o) {
    require_same_alphabet(alphabet_, o.alphabet_);
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  NCPoly& operator-=(const NCPoly& o) {
    require_same_alphabet(alphabet_, o.alphabet_);
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  NCPoly& operator*=(const Laurent& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    if (s.is_one()) return *this;
    TermMap out;
    for (auto& [w, c] : terms_) {
      Laurent v = c * s;
      if (!v.is_zero()) out.emplace(w, std::move(v));
    }
    terms_ = std::move(out);
    return *this;
  }

  /// Adds s * o without materializing the scaled copy.
  void add_scaled(const NCPoly& o, const Laurent& s) {
    require_same_alphabet(alphabet_, o.alphabet_);
    if (s.is_zero()) return;
    for (const auto& [w, c] : o.terms_) add_term(w, s.is_one() ? c : c * s);
  }

  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator-(NCPoly a) {
    for (auto& [w, c] : a.terms_) c = -c;
    return a;
  }
  friend NCPoly operator*(const Laurent& s, NCPoly p) { return p *= s; }
  friend NCPoly operator*(NCPoly p, const Laurent& s) { return p *= s; }

  friend bool operator==(const NCPoly& a, const NCPoly& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return same_alphabet(a.alphabet_, b.alphabet_) && a.terms_ == b.terms_;
  }

 private:
  void check_word(const Word& w) const {
    for (const auto& l : w)
      if (!alphabet_->contains(l))
        throw alphabet_mismatch("letter code " + std::to_string(l.code) + " not in alphabet " +
                                alphabet_->name());
  }

  AlphabetRef alphabet_;
  TermMap terms_;
};

/// Concatenation product, extended bilinearly.
inline NCPoly nc_mul(const NCPoly& p, const NCPoly& q) {
  require_same_alphabet(p.alphabet(), q.alphabet());
  NCPoly out(p.alphabet());
  for (const auto& [u, cu] : p.terms())
    for (const auto& [v, cv] : q.terms()) out.add_term(u + v, cu * cv);
  return out;
}

/// l * p for a single letter l.
inline NCPoly prepend(Letter l, const NCPoly& p) {
  NCPoly out(p.alphabet());
  for (const auto& [w, c] : p.terms()) out.add_term(w.prepended(l), c);
  return out;
}

/// p * l for a single letter l.
inline NCPoly append(const NCPoly& p, Letter l) {
  NCPoly out(p.alphabet());
  for (const auto& [w, c] : p.terms()) out.add_term(w.appended(l), c);
  return out;
}

/// Linear map sending each word to its first letter and 1 to 1.
inline NCPoly first(const NCPoly& p) {
  NCPoly out(p.alphabet());
  for (const auto& [w, c] : p.terms()) out.add_term(w.empty() ? Word{} : Word{w.first()}, c);
  return out;
}

/// Linear map sending each word to its last letter and 1 to 1.
inline NCPoly last(const NCPoly& p) {
  NCPoly out(p.alphabet());
  for (const auto& [w, c] : p.terms()) out.add_term(w.empty() ? Word{} : Word{w.last()}, c);
  return out;
}

/// A monic word with its first letter removed; a single letter and 1 both go to 1.
inline Word rest_word(const Word& m) { return m.rest(); }

/// A monic word with its last letter removed.
inline Word init_word(const Word& m) { return m.init(); }

/// Values are kept normalized, so this is the identity; it exists so callers
/// can state the intent.
inline NCPoly normalize(const NCPoly& p) { return p; }

}  // namespace qsh
