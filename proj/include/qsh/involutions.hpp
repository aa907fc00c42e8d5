#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "qsh/ncpoly.hpp"

namespace qsh {

/// Index families: z_k = x^(k-1) y with k >= 1, and e_k = a^k b with k >= 0.
enum class Family { Z, E };

/// Multi-index (k_1, ..., k_r) of one family, the index form of a word in
/// h^1 (family Z) or H^1 (family E).
struct IndexWord {
  Family family = Family::Z;
  std::vector<int> indices;

  /// k_1 >= 2 for Z, k_1 >= 1 for E; the empty index word is admissible.
  bool admissible() const {
    if (indices.empty()) return true;
    return indices.front() >= (family == Family::Z ? 2 : 1);
  }

  /// Number of letters of the encoded word: sum k_i for Z, sum (k_i + 1) for E.
  int weight() const {
    int w = std::accumulate(indices.begin(), indices.end(), 0);
    return family == Family::Z ? w : w + static_cast<int>(indices.size());
  }

  std::size_t depth() const { return indices.size(); }

  friend bool operator==(const IndexWord&, const IndexWord&) = default;
};

inline const AlphabetRef& index_alphabet(Family f) {
  return f == Family::Z ? alphabets::z() : alphabets::e();
}
inline const AlphabetRef& letter_alphabet(Family f) {
  return f == Family::Z ? alphabets::xy() : alphabets::ab();
}

namespace detail {

// Letter codes inside XY and AB: x/a = 0, y/b = 1.
inline constexpr Letter kFirst{0};
inline constexpr Letter kSecond{1};

inline bool is_xy(const AlphabetRef& a) { return same_alphabet(a, alphabets::xy()); }
inline bool is_ab(const AlphabetRef& a) { return same_alphabet(a, alphabets::ab()); }
inline bool is_z(const AlphabetRef& a) { return same_alphabet(a, alphabets::z()); }
inline bool is_e(const AlphabetRef& a) { return same_alphabet(a, alphabets::e()); }

}  // namespace detail

inline void validate(const IndexWord& iw) {
  const int lo = iw.family == Family::Z ? 1 : 0;
  for (int k : iw.indices)
    if (k < lo)
      throw std::domain_error("index " + std::to_string(k) + " out of domain for " +
                              (iw.family == Family::Z ? "z" : "e"));
}

/// Index word -> word in x,y (resp. a,b).
inline Word encode(const IndexWord& iw) {
  validate(iw);
  std::vector<Letter> v;
  for (int k : iw.indices) {
    const int leading = iw.family == Family::Z ? k - 1 : k;
    v.insert(v.end(), static_cast<std::size_t>(leading), detail::kFirst);
    v.push_back(detail::kSecond);
  }
  return Word(std::move(v));
}

/// Word in x,y (resp. a,b) -> index word. The word must be empty or end in
/// y (resp. b).
inline IndexWord decode(const Word& w, Family family) {
  IndexWord out{family, {}};
  int run = 0;
  for (const auto& l : w) {
    if (l == detail::kFirst) {
      ++run;
    } else {
      out.indices.push_back(family == Family::Z ? run + 1 : run);
      run = 0;
    }
  }
  if (run != 0)
    throw not_admissible(std::string("word does not end in ") + (family == Family::Z ? "y" : "b") +
                         "; not in the image of the index encoding");
  return out;
}

inline IndexWord index_word_of(const Word& w, const AlphabetRef& alphabet) {
  if (detail::is_z(alphabet) || detail::is_e(alphabet)) {
    IndexWord iw{detail::is_z(alphabet) ? Family::Z : Family::E, {}};
    for (const auto& l : w) iw.indices.push_back(l.code);
    return iw;
  }
  if (detail::is_xy(alphabet)) return decode(w, Family::Z);
  if (detail::is_ab(alphabet)) return decode(w, Family::E);
  throw alphabet_mismatch("alphabet " + alphabet->name() + " has no index encoding");
}

inline Word index_letters(const IndexWord& iw) {
  validate(iw);
  std::vector<Letter> v;
  for (int k : iw.indices) v.push_back(Letter{k});
  return Word(std::move(v));
}

/// Rewrites a polynomial over Z (resp. E) in the letters x,y (resp. a,b).
/// Polynomials already in letter form are returned unchanged.
inline NCPoly to_letter_form(const NCPoly& p) {
  const auto& a = p.alphabet();
  if (detail::is_xy(a) || detail::is_ab(a)) return p;
  if (!detail::is_z(a) && !detail::is_e(a))
    throw alphabet_mismatch("alphabet " + a->name() + " has no letter form");
  const Family f = detail::is_z(a) ? Family::Z : Family::E;
  NCPoly out(letter_alphabet(f));
  for (const auto& [w, c] : p.terms()) out.add_term(encode(index_word_of(w, a)), c);
  return out;
}

/// Rewrites a polynomial over XY (resp. AB) in the indexed letters z_k (resp.
/// e_k). Every word must end in y (resp. b).
inline NCPoly to_index_form(const NCPoly& p) {
  const auto& a = p.alphabet();
  if (detail::is_z(a) || detail::is_e(a)) return p;
  if (!detail::is_xy(a) && !detail::is_ab(a))
    throw alphabet_mismatch("alphabet " + a->name() + " has no index form");
  const Family f = detail::is_xy(a) ? Family::Z : Family::E;
  NCPoly out(index_alphabet(f));
  for (const auto& [w, c] : p.terms()) out.add_term(index_letters(decode(w, f)), c);
  return out;
}

/// Converts between the two representations of h (XY <-> Z) or H (AB <-> E).
inline NCPoly convert(const NCPoly& p, const AlphabetRef& target) {
  if (same_alphabet(p.alphabet(), target)) return p;
  if (detail::is_xy(target) || detail::is_ab(target)) {
    NCPoly out = to_letter_form(p);
    require_same_alphabet(out.alphabet(), target);
    return out;
  }
  if (detail::is_z(target) || detail::is_e(target)) {
    NCPoly out = to_index_form(p);
    require_same_alphabet(out.alphabet(), target);
    return out;
  }
  throw alphabet_mismatch("cannot convert from " + p.alphabet()->name() + " to " + target->name());
}

/// Converts back to the representation of `like` when every word allows it,
/// otherwise returns the letter form.
inline NCPoly restore_form(const NCPoly& p, const AlphabetRef& like) {
  if (detail::is_z(like) || detail::is_e(like)) {
    try {
      return to_index_form(p);
    } catch (const not_admissible&) {
      return p;
    }
  }
  return p;
}

/// The anti-automorphism of Q<x,y> with x <-> y. Coefficients must be free
/// of h. Accepts Z-form input; the result comes back in Z form when it stays
/// inside h^1.
inline NCPoly tau(const NCPoly& p) {
  if (!p.is_rational()) throw std::domain_error("tau needs rational coefficients (no powers of h)");
  NCPoly in = to_letter_form(p);
  if (!detail::is_xy(in.alphabet())) throw alphabet_mismatch("tau acts on XY, got " + p.alphabet()->name());
  NCPoly out(alphabets::xy());
  for (const auto& [w, c] : in.terms()) {
    std::vector<Letter> v;
    v.reserve(w.size());
    for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it)
      v.push_back(*it == detail::kFirst ? detail::kSecond : detail::kFirst);
    out.add_term(Word(std::move(v)), c);
  }
  return restore_form(out, p.alphabet());
}

/// The anti-automorphism of C<a,b> with a -> h b and b -> h^-1 a.
inline NCPoly sigma(const NCPoly& p) {
  NCPoly in = to_letter_form(p);
  if (!detail::is_ab(in.alphabet())) throw alphabet_mismatch("sigma acts on AB, got " + p.alphabet()->name());
  NCPoly out(alphabets::ab());
  for (const auto& [w, c] : in.terms()) {
    std::vector<Letter> v;
    v.reserve(w.size());
    int shift = 0;
    for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
      if (*it == detail::kFirst) {
        v.push_back(detail::kSecond);
        ++shift;
      } else {
        v.push_back(detail::kFirst);
        --shift;
      }
    }
    out.add_term(Word(std::move(v)), shift == 0 ? c : c * Laurent::hbar(shift));
  }
  return restore_form(out, p.alphabet());
}

/// Subspaces h^0 = Q + x h y, h^1 = Q + h y and their hatted analogues over
/// C = Q[h, h^-1].
enum class Space { H0, H1, Hhat0, Hhat1 };

/// True iff every word of p lies in the subspace. Polynomials over an
/// alphabet the space does not live on are never members.
inline bool membership(const NCPoly& p, Space space) {
  const bool hat = space == Space::Hhat0 || space == Space::Hhat1;
  const auto& a = p.alphabet();
  const bool ok_alphabet = hat ? (detail::is_ab(a) || detail::is_e(a)) : (detail::is_xy(a) || detail::is_z(a));
  if (!ok_alphabet) return p.is_zero();
  if (!hat && !p.is_rational()) return false;
  const bool need_start = space == Space::H0 || space == Space::Hhat0;
  if (detail::is_z(a) || detail::is_e(a)) {
    if (!need_start) return true;
    for (const auto& [w, c] : p.terms())
      if (!index_word_of(w, a).admissible()) return false;
    return true;
  }
  for (const auto& [w, c] : p.terms()) {
    if (w.empty()) continue;
    if (w.last() != detail::kSecond) return false;
    if (need_start && w.first() != detail::kFirst) return false;
  }
  return true;
}

}  // namespace qsh
