#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qsh/errors.hpp"

namespace qsh {

/// A letter is an integer code interpreted by its alphabet: the symbol's
/// position for finite alphabets, the index itself for indexed families.
struct Letter {
  std::int32_t code = 0;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

class Alphabet;
using AlphabetRef = std::shared_ptr<const Alphabet>;

/// Either a finite list of distinct symbols or an indexed family such as
/// z_1, z_2, ... (base "z", minimum index 1). Indexed families are never
/// materialized.
class Alphabet {
 public:
  enum class Kind { finite, indexed };

  static AlphabetRef make_finite(std::string name, std::vector<std::string> symbols) {
    if (symbols.empty()) throw std::invalid_argument("alphabet " + name + " has no symbols");
    std::set<std::string> seen;
    for (const auto& s : symbols) {
      if (s.empty()) throw std::invalid_argument("empty symbol in alphabet " + name);
      if (!seen.insert(s).second)
        throw std::invalid_argument("duplicate symbol '" + s + "' in alphabet " + name);
    }
    return AlphabetRef(new Alphabet(std::move(name), Kind::finite, std::move(symbols), {}, 0));
  }

  static AlphabetRef make_indexed(std::string name, std::string base, int min_index) {
    if (base.empty()) throw std::invalid_argument("indexed alphabet needs a base symbol");
    return AlphabetRef(new Alphabet(std::move(name), Kind::indexed, {}, std::move(base), min_index));
  }

  const std::string& name() const noexcept { return name_; }
  Kind kind() const noexcept { return kind_; }
  bool is_indexed() const noexcept { return kind_ == Kind::indexed; }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  const std::string& base() const noexcept { return base_; }
  int min_index() const noexcept { return min_index_; }

  /// Number of letters of a finite alphabet.
  std::size_t size() const noexcept { return symbols_.size(); }

  bool contains(Letter l) const noexcept {
    if (is_indexed()) return l.code >= min_index_;
    return l.code >= 0 && static_cast<std::size_t>(l.code) < symbols_.size();
  }

  /// True when every symbol is one character, so words print without spaces.
  bool compact() const noexcept {
    return !is_indexed() &&
           std::all_of(symbols_.begin(), symbols_.end(), [](const auto& s) { return s.size() == 1; });
  }

  std::string symbol(Letter l) const {
    if (!contains(l)) throw std::out_of_range("letter code " + std::to_string(l.code) + " not in " + name_);
    if (is_indexed()) return base_ + std::to_string(l.code);
    return symbols_[static_cast<std::size_t>(l.code)];
  }

  std::optional<Letter> find(std::string_view sym) const {
    if (is_indexed()) {
      if (sym.size() <= base_.size() || sym.substr(0, base_.size()) != base_) return std::nullopt;
      auto digits = sym.substr(base_.size());
      int k = 0;
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
      if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
      Letter l{k};
      if (!contains(l)) return std::nullopt;
      return l;
    }
    for (std::size_t i = 0; i < symbols_.size(); ++i)
      if (symbols_[i] == sym) return Letter{static_cast<std::int32_t>(i)};
    return std::nullopt;
  }

  Letter letter(std::string_view sym) const {
    if (auto l = find(sym)) return *l;
    throw std::invalid_argument("unknown letter '" + std::string(sym) + "' in alphabet " + name_);
  }

  /// Letter of an indexed family; throws if the index is outside the domain.
  Letter indexed(int k) const {
    if (!is_indexed()) throw std::logic_error("alphabet " + name_ + " is not indexed");
    if (k < min_index_)
      throw std::domain_error("index " + std::to_string(k) + " out of domain for " + base_ +
                              " (minimum " + std::to_string(min_index_) + ")");
    return Letter{k};
  }

  /// All letters of a finite alphabet, or indices min_index..index_bound of an
  /// indexed family.
  std::vector<Letter> letters(int index_bound) const {
    std::vector<Letter> out;
    if (is_indexed()) {
      for (int k = min_index_; k <= index_bound; ++k) out.push_back(Letter{k});
    } else {
      for (std::size_t i = 0; i < symbols_.size(); ++i) out.push_back(Letter{static_cast<std::int32_t>(i)});
    }
    return out;
  }

 private:
  Alphabet(std::string name, Kind kind, std::vector<std::string> symbols, std::string base, int min_index)
      : name_(std::move(name)),
        kind_(kind),
        symbols_(std::move(symbols)),
        base_(std::move(base)),
        min_index_(min_index) {}

  std::string name_;
  Kind kind_;
  std::vector<std::string> symbols_;
  std::string base_;
  int min_index_;
};

/// Alphabets are identified by name.
inline bool same_alphabet(const AlphabetRef& a, const AlphabetRef& b) {
  return a == b || (a && b && a->name() == b->name());
}

inline void require_same_alphabet(const AlphabetRef& a, const AlphabetRef& b) {
  if (!same_alphabet(a, b))
    throw alphabet_mismatch("alphabet mismatch: " + (a ? a->name() : std::string("?")) + " vs " +
                            (b ? b->name() : std::string("?")));
}

namespace alphabets {

/// {x, y}: letters of the iterated-integral algebra.
inline const AlphabetRef& xy() {
  static const AlphabetRef a = Alphabet::make_finite("XY", {"x", "y"});
  return a;
}

/// {a, b}: letters of the q-algebra.
inline const AlphabetRef& ab() {
  static const AlphabetRef a = Alphabet::make_finite("AB", {"a", "b"});
  return a;
}

inline const AlphabetRef& abc() {
  static const AlphabetRef a = Alphabet::make_finite("ABC", {"a", "b", "c"});
  return a;
}

/// {z_k : k >= 1}, z_k = x^(k-1) y.
inline const AlphabetRef& z() {
  static const AlphabetRef a = Alphabet::make_indexed("Z", "z", 1);
  return a;
}

/// {e_k : k >= 0}, e_k = a^k b.
inline const AlphabetRef& e() {
  static const AlphabetRef a = Alphabet::make_indexed("E", "e", 0);
  return a;
}

inline AlphabetRef by_name(std::string_view name) {
  if (name == "XY") return xy();
  if (name == "AB") return ab();
  if (name == "ABC") return abc();
  if (name == "Z") return z();
  if (name == "E") return e();
  throw unknown_name("unknown alphabet '" + std::string(name) + "'");
}

}  // namespace alphabets

}  // namespace qsh
