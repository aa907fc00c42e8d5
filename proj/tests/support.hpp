#pragma once

// Shared fixtures for the test binaries: shorthand constructors and an
// independent implementation of the classical quasi-shuffle product.

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "qsh/qsh.hpp"

namespace qsh::testing {

inline NCPoly P(std::string_view text, const AlphabetRef& context = nullptr) { return parse_poly(text, context); }

inline NCPoly W(const AlphabetRef& a, const Word& w, const Laurent& c = Laurent(1)) { return NCPoly(a, w, c); }

/// Random word over a finite alphabet.
inline Word random_word(std::mt19937& rng, const Alphabet& a, std::size_t len) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(a.size()) - 1);
  std::vector<Letter> v;
  for (std::size_t i = 0; i < len; ++i) v.push_back(Letter{pick(rng)});
  return Word(std::move(v));
}

/// Random polynomial with small integer coefficients, optionally with powers of h.
inline NCPoly random_poly(std::mt19937& rng, const AlphabetRef& a, int terms, int max_len, bool with_h) {
  std::uniform_int_distribution<int> len(0, max_len), coeff(-5, 5), hexp(-2, 2);
  NCPoly p(a);
  for (int i = 0; i < terms; ++i) {
    const int c = coeff(rng);
    p.add_term(random_word(rng, *a, static_cast<std::size_t>(len(rng))), with_h ? Laurent::hbar(hexp(rng), c) : Laurent(c));
  }
  return p;
}

/// Classical quasi-shuffle from its non-recursive description: a term for
/// every pair of strictly increasing maps [n] -> [k], [m] -> [k] whose images
/// cover [k]; positions hit by both maps carry the product of the two letters.
/// `diamond` returns nullopt for a zero product.
class ClassicalQuasiShuffle {
 public:
  using Letters = std::vector<int>;
  using Poly = std::map<Letters, Rational>;
  using Diamond = std::function<std::optional<int>(int, int)>;

  explicit ClassicalQuasiShuffle(Diamond d) : diamond_(std::move(d)) {}

  Poly operator()(const Letters& u, const Letters& v) const {
    Poly out;
    const int n = static_cast<int>(u.size()), m = static_cast<int>(v.size());
    for (int k = std::max(n, m); k <= n + m; ++k) {
      for (unsigned su = 0; su < (1u << k); ++su) {
        if (__builtin_popcount(su) != n) continue;
        for (unsigned sv = 0; sv < (1u << k); ++sv) {
          if (__builtin_popcount(sv) != m || (su | sv) != (1u << k) - 1) continue;
          std::optional<Letters> word = Letters{};
          int iu = 0, iv = 0;
          for (int pos = 0; pos < k && word; ++pos) {
            const bool inu = su >> pos & 1u, inv = sv >> pos & 1u;
            if (inu && inv) {
              auto d = diamond_(u[iu++], v[iv++]);
              if (!d) word.reset();
              else word->push_back(*d);
            } else if (inu) {
              word->push_back(u[iu++]);
            } else {
              word->push_back(v[iv++]);
            }
          }
          if (word) out[*word] += 1;
        }
      }
    }
    return out;
  }

 private:
  Diamond diamond_;
};

inline NCPoly to_ncpoly(const ClassicalQuasiShuffle::Poly& p, const AlphabetRef& a) {
  NCPoly out(a);
  for (const auto& [letters, c] : p) {
    std::vector<Letter> v;
    for (int x : letters) v.push_back(Letter{x});
    out += NCPoly(a, Word(std::move(v)), Laurent(c));
  }
  return out;
}

inline std::vector<int> codes(const Word& w) {
  std::vector<int> out;
  for (const auto& l : w) out.push_back(l.code);
  return out;
}

/// Checks the classical oracle against the engine for one built-in rule on
/// all nonempty word pairs of total weight <= bound. Returns the first
/// disagreement, if any.
inline std::optional<std::string> classical_mismatch(std::string_view rule, int bound) {
  const ProductHandle& h = builtin_handle(rule);
  const auto& a = h.alphabet();
  ClassicalQuasiShuffle oracle(rule == "shuffle" ? ClassicalQuasiShuffle::Diamond([](int, int) { return std::nullopt; })
                                                 : ClassicalQuasiShuffle::Diamond([](int i, int j) { return std::optional<int>(i + j); }));
  const auto words = words_up_to_weight(a, bound);
  for (const auto& u : words) {
    for (const auto& v : words) {
      if (word_weight(u, a) + word_weight(v, a) > bound) continue;
      NCPoly want = to_ncpoly(oracle(codes(u), codes(v)), a);
      NCPoly got = h.words(u, v);
      if (got != want)
        return to_string(u, *a) + " . " + to_string(v, *a) + ": engine " + to_text(got) + ", oracle " + to_text(want);
    }
  }
  return std::nullopt;
}

}  // namespace qsh::testing
