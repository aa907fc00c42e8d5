#pragma once

#include <cassert>
#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "qsh/alphabet.hpp"

namespace qsh {

/// Finite sequence of letters; the empty word is the unit 1.
///
/// Words order canonically: shorter first, then lexicographically by letter
/// code. This is the term order of every printed polynomial.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  static Word repeat(Letter l, std::size_t n) { return Word(std::vector<Letter>(n, l)); }

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }
  const std::vector<Letter>& letters() const noexcept { return letters_; }

  Letter first() const {
    assert(!empty());
    return letters_.front();
  }
  Letter last() const {
    assert(!empty());
    return letters_.back();
  }

  /// The word without its first letter (1 stays 1).
  Word rest() const {
    if (empty()) return {};
    return Word(std::vector<Letter>(letters_.begin() + 1, letters_.end()));
  }

  /// The word without its last letter (1 stays 1).
  Word init() const {
    if (empty()) return {};
    return Word(std::vector<Letter>(letters_.begin(), letters_.end() - 1));
  }

  Word suffix(std::size_t from) const {
    return Word(std::vector<Letter>(letters_.begin() + static_cast<std::ptrdiff_t>(from), letters_.end()));
  }
  Word prefix(std::size_t len) const {
    return Word(std::vector<Letter>(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(len)));
  }

  Word& operator+=(const Word& o) {
    letters_.insert(letters_.end(), o.letters_.begin(), o.letters_.end());
    return *this;
  }
  friend Word operator+(Word a, const Word& b) { return a += b; }

  Word prepended(Letter l) const {
    std::vector<Letter> v;
    v.reserve(letters_.size() + 1);
    v.push_back(l);
    v.insert(v.end(), letters_.begin(), letters_.end());
    return Word(std::move(v));
  }
  Word appended(Letter l) const {
    Word w = *this;
    w.letters_.push_back(l);
    return w;
  }

  Word reversed() const { return Word(std::vector<Letter>(letters_.rbegin(), letters_.rend())); }

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    return a.letters_ <=> b.letters_;
  }

 private:
  std::vector<Letter> letters_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (const auto& l : w) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(l.code));
      h *= 1099511628211ull;
    }
    return h ^ w.size();
  }
};

/// "xxy" for compact alphabets, "z3 z1" otherwise; "1" for the empty word.
inline std::string to_string(const Word& w, const Alphabet& alphabet) {
  if (w.empty()) return "1";
  std::string out;
  const bool compact = alphabet.compact();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0 && !compact) out += ' ';
    out += alphabet.symbol(w[i]);
  }
  return out;
}

/// Builds a word from single-character symbols, e.g. word_of(*xy(), "xxy").
inline Word word_of(const Alphabet& alphabet, std::string_view symbols) {
  std::vector<Letter> v;
  for (char ch : symbols) {
    if (ch == ' ') continue;
    v.push_back(alphabet.letter(std::string_view(&ch, 1)));
  }
  return Word(std::move(v));
}

/// Word of an indexed family from its indices, e.g. indexed_word(*z(), {3, 1}).
inline Word indexed_word(const Alphabet& alphabet, std::initializer_list<int> indices) {
  std::vector<Letter> v;
  for (int k : indices) v.push_back(alphabet.indexed(k));
  return Word(std::move(v));
}

}  // namespace qsh
