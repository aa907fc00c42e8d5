#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qsh/involutions.hpp"
#include "qsh/ncpoly.hpp"
#include "qsh/text.hpp"

namespace qsh {

inline constexpr int default_weight_bound = 8;

enum class Property { commutative, decomposable, associative };

inline std::string to_string(Property p) {
  switch (p) {
    case Property::commutative: return "commutative";
    case Property::decomposable: return "decomposable";
    case Property::associative: return "associative";
  }
  return "?";
}

/// Counterexample for a failed property: the letters involved and the two
/// sides (or the offending value) in text form.
struct Witness {
  std::vector<Letter> letters;
  std::string detail;
};

struct PropertyReport {
  Property property = Property::commutative;
  bool holds = false;
  std::optional<Witness> witness;  // present iff !holds
  Word common_tail;                // decomposable only
  bool structural = false;         // closed-form index rule, holds for every index
  int weight_bound = default_weight_bound;
};

struct GeneratorTraits {
  bool index_additive = false;  // output is the single letter with index i + j
  bool symmetric = false;       // commutative by construction
};

/// A bilinear map on letters with values in the free algebra over the same
/// alphabet. Finite alphabets use a complete table, indexed families a
/// closed-form generator. Immutable; copies share the (lazily computed)
/// property reports.
class DiamondRule {
 public:
  using Table = std::map<std::pair<Letter, Letter>, NCPoly>;
  using Generator = std::function<NCPoly(Letter, Letter)>;

  static DiamondRule from_table(std::string name, AlphabetRef alphabet, Table table) {
    if (alphabet->is_indexed()) throw std::invalid_argument("table rule " + name + " needs a finite alphabet");
    for (auto x : alphabet->letters(0))
      for (auto y : alphabet->letters(0))
        if (!table.count({x, y}))
          throw missing_entry("rule " + name + ": no entry for (" + alphabet->symbol(x) + ", " +
                              alphabet->symbol(y) + ")");
    for (const auto& [k, v] : table) {
      if (!alphabet->contains(k.first) || !alphabet->contains(k.second))
        throw alphabet_mismatch("rule " + name + ": table key outside alphabet " + alphabet->name());
      validate_output(name, alphabet, v);
    }
    auto s = std::make_shared<State>();
    s->name = std::move(name);
    s->alphabet = std::move(alphabet);
    s->table = std::move(table);
    return DiamondRule(std::move(s));
  }

  static DiamondRule from_generator(std::string name, AlphabetRef alphabet, Generator gen,
                                    GeneratorTraits traits = {}) {
    auto s = std::make_shared<State>();
    s->name = std::move(name);
    s->alphabet = std::move(alphabet);
    s->generator = std::move(gen);
    s->traits = traits;
    return DiamondRule(std::move(s));
  }

  const std::string& name() const noexcept { return state_->name; }
  const AlphabetRef& alphabet() const noexcept { return state_->alphabet; }
  bool is_table() const noexcept { return state_->table.has_value(); }
  const GeneratorTraits& traits() const noexcept { return state_->traits; }

  NCPoly apply(Letter x, Letter y) const {
    const auto& a = *state_->alphabet;
    if (!a.contains(x) || !a.contains(y))
      throw alphabet_mismatch("letter outside alphabet " + a.name() + " in rule " + state_->name);
    if (state_->table) {
      auto it = state_->table->find({x, y});
      if (it == state_->table->end())
        throw missing_entry("rule " + state_->name + ": no entry for (" + a.symbol(x) + ", " + a.symbol(y) + ")");
      return it->second;
    }
    NCPoly out = state_->generator(x, y);
    validate_output(state_->name, state_->alphabet, out);
    return out;
  }

  /// Letters a checker quantifies over: the whole finite alphabet, or indices
  /// up to `weight_bound` of an indexed family.
  std::vector<Letter> letters(int weight_bound) const { return state_->alphabet->letters(weight_bound); }

  /// Report for the default weight bound, computed once.
  const PropertyReport& cached_report(Property p) const;

 private:
  struct State {
    std::string name;
    AlphabetRef alphabet;
    std::optional<Table> table;
    Generator generator;
    GeneratorTraits traits;
    mutable std::once_flag once;
    mutable std::array<PropertyReport, 3> reports;
  };

  explicit DiamondRule(std::shared_ptr<State> s) : state_(std::move(s)) {}

  static void validate_output(const std::string& name, const AlphabetRef& alphabet, const NCPoly& v) {
    require_same_alphabet(alphabet, v.alphabet());
    for (const auto& [w, c] : v.terms())
      if (w.empty()) throw std::invalid_argument("rule " + name + ": output contains the empty word");
  }

  std::shared_ptr<State> state_;
};

inline NCPoly diamond_apply(const DiamondRule& rule, Letter x, Letter y) { return rule.apply(x, y); }

/// Head (a combination of letters) and common tail word of x <> y, with
/// head * tail == x <> y. Zero outputs give (0, 1).
struct Decomposition {
  NCPoly head;
  Word tail;
};

namespace detail {

inline std::optional<Decomposition> try_decompose(const NCPoly& out) {
  Decomposition d{NCPoly(out.alphabet()), Word{}};
  if (out.is_zero()) return d;
  bool firstTerm = true;
  for (const auto& [w, c] : out.terms()) {
    if (w.empty()) return std::nullopt;
    Word tail = w.rest();
    if (firstTerm) {
      d.tail = tail;
      firstTerm = false;
    } else if (tail != d.tail) {
      return std::nullopt;
    }
    d.head.add_term(Word{w.first()}, c);
  }
  return d;
}

inline std::string pair_text(const Alphabet& a, Letter x, Letter y) {
  return "(" + a.symbol(x) + ", " + a.symbol(y) + ")";
}

inline std::string triple_text(const Alphabet& a, Letter x, Letter y, Letter z) {
  return "(" + a.symbol(x) + ", " + a.symbol(y) + ", " + a.symbol(z) + ")";
}

}  // namespace detail

inline PropertyReport check_decomposable(const DiamondRule& rule, int weight_bound = default_weight_bound);

/// Splits x <> y into first-letter combination and rest word.
inline Decomposition decompose(const DiamondRule& rule, Letter x, Letter y) {
  const PropertyReport& rep = rule.cached_report(Property::decomposable);
  if (!rep.holds) throw not_decomposable("rule " + rule.name() + " is not decomposable: " + rep.witness->detail);
  NCPoly out = rule.apply(x, y);
  auto d = detail::try_decompose(out);
  if (!d)
    throw not_decomposable("rule " + rule.name() + ": " + detail::pair_text(*rule.alphabet(), x, y) +
                           " has no common tail");
  return *d;
}

inline PropertyReport check_commutative(const DiamondRule& rule, int weight_bound = default_weight_bound) {
  PropertyReport rep;
  rep.property = Property::commutative;
  rep.weight_bound = weight_bound;
  rep.structural = rule.traits().index_additive || rule.traits().symmetric;
  const auto letters = rule.letters(weight_bound);
  const auto& a = *rule.alphabet();
  for (std::size_t i = 0; i < letters.size(); ++i) {
    for (std::size_t j = i + 1; j < letters.size(); ++j) {
      NCPoly xy = rule.apply(letters[i], letters[j]);
      NCPoly yx = rule.apply(letters[j], letters[i]);
      if (xy != yx) {
        rep.holds = false;
        rep.witness = Witness{{letters[i], letters[j]},
                              detail::pair_text(a, letters[i], letters[j]) + ": " + to_text(xy) + " != " + to_text(yx)};
        return rep;
      }
    }
  }
  rep.holds = true;
  return rep;
}

/// Every output factors as (letters) * tail, and all tails of length >= 2
/// coincide. The reported common tail is that long tail when one exists,
/// else the tail shared by all outputs of length >= 2, else 1.
inline PropertyReport check_decomposable(const DiamondRule& rule, int weight_bound) {
  PropertyReport rep;
  rep.property = Property::decomposable;
  rep.weight_bound = weight_bound;
  rep.structural = rule.traits().index_additive;
  const auto letters = rule.letters(weight_bound);
  const auto& a = *rule.alphabet();
  std::optional<Word> long_tail;
  std::optional<std::pair<Letter, Letter>> long_tail_at;
  std::vector<Word> tails;  // tails of outputs with l(x <> y) >= 2
  for (auto x : letters) {
    for (auto y : letters) {
      NCPoly out = rule.apply(x, y);
      auto d = detail::try_decompose(out);
      if (!d) {
        rep.holds = false;
        rep.witness = Witness{{x, y}, detail::pair_text(a, x, y) + " -> " + to_text(out) + " has no common tail"};
        return rep;
      }
      if (out.max_length() >= 2) tails.push_back(d->tail);
      if (d->tail.size() >= 2) {
        if (long_tail && *long_tail != d->tail) {
          rep.holds = false;
          rep.witness = Witness{{long_tail_at->first, long_tail_at->second, x, y},
                                "tails " + to_string(*long_tail, a) + " at " +
                                    detail::pair_text(a, long_tail_at->first, long_tail_at->second) + " and " +
                                    to_string(d->tail, a) + " at " + detail::pair_text(a, x, y) + " differ"};
          return rep;
        }
        long_tail = d->tail;
        long_tail_at = {x, y};
      }
    }
  }
  rep.holds = true;
  if (long_tail) {
    rep.common_tail = *long_tail;
  } else if (!tails.empty() &&
             std::all_of(tails.begin(), tails.end(), [&](const Word& t) { return t == tails.front(); })) {
    rep.common_tail = tails.front();
  }
  return rep;
}

/// Checks both defining conditions of an associative decomposable map for all
/// letter triples within the bound:
///   (F(x<>y) <> z) R(x<>y) == (x <> F(y<>z)) R(y<>z)
///   z <> F(R(x<>y)) == -z F(R(x<>y))   whenever l(x<>y) >= 2.
/// The diamond is extended bilinearly over the head combinations.
inline PropertyReport check_associative(const DiamondRule& rule, int weight_bound = default_weight_bound) {
  PropertyReport rep;
  rep.property = Property::associative;
  rep.weight_bound = weight_bound;
  rep.structural = rule.traits().index_additive;
  const auto& a = *rule.alphabet();

  for (auto pre : {check_commutative(rule, weight_bound), check_decomposable(rule, weight_bound)}) {
    if (!pre.holds) {
      rep.holds = false;
      rep.witness = Witness{pre.witness->letters, "precondition " + to_string(pre.property) +
                                                      " fails: " + pre.witness->detail};
      return rep;
    }
  }

  const auto letters = rule.letters(weight_bound);
  std::map<std::pair<Letter, Letter>, Decomposition> parts;
  auto part = [&](Letter x, Letter y) -> const Decomposition& {
    auto it = parts.find({x, y});
    if (it == parts.end()) it = parts.emplace(std::make_pair(x, y), *detail::try_decompose(rule.apply(x, y))).first;
    return it->second;
  };
  auto head_left = [&](const NCPoly& head, Letter z) {  // head <> z
    NCPoly out(rule.alphabet());
    for (const auto& [w, c] : head.terms()) out.add_scaled(rule.apply(w.first(), z), c);
    return out;
  };
  auto head_right = [&](Letter x, const NCPoly& head) {  // x <> head
    NCPoly out(rule.alphabet());
    for (const auto& [w, c] : head.terms()) out.add_scaled(rule.apply(x, w.first()), c);
    return out;
  };

  for (auto x : letters) {
    for (auto y : letters) {
      const Decomposition xy = part(x, y);
      for (auto z : letters) {
        const Decomposition& yz = part(y, z);
        NCPoly lhs = nc_mul(head_left(xy.head, z), NCPoly(rule.alphabet(), xy.tail));
        NCPoly rhs = nc_mul(head_right(x, yz.head), NCPoly(rule.alphabet(), yz.tail));
        if (lhs != rhs) {
          rep.holds = false;
          rep.witness = Witness{{x, y, z}, detail::triple_text(a, x, y, z) + ": (F(x<>y)<>z)R(x<>y) = " +
                                               to_text(lhs) + " but (x<>F(y<>z))R(y<>z) = " + to_text(rhs)};
          return rep;
        }
      }
      if (rule.apply(x, y).max_length() >= 2) {
        const Letter m = xy.tail.first();
        for (auto z : letters) {
          NCPoly got = rule.apply(z, m);
          NCPoly want(rule.alphabet(), Word{z, m}, Laurent(-1));
          if (got != want) {
            rep.holds = false;
            rep.witness = Witness{{x, y, z}, "l" + detail::pair_text(a, x, y) + " >= 2 but " + a.symbol(z) +
                                                 " <> " + a.symbol(m) + " = " + to_text(got) + ", expected " +
                                                 to_text(want)};
            return rep;
          }
        }
      }
    }
  }
  rep.holds = true;
  return rep;
}

/// For an output of length k >= 2, whether R(x<>y) is the (k-1)-fold power of
/// its first letter.
inline bool tail_is_power(const DiamondRule& rule, Letter x, Letter y) {
  NCPoly out = rule.apply(x, y);
  const std::size_t k = out.max_length();
  if (k < 2) return true;
  auto d = detail::try_decompose(out);
  if (!d || d->tail.empty()) return false;
  return d->tail == Word::repeat(d->tail.first(), k - 1);
}

inline const PropertyReport& DiamondRule::cached_report(Property p) const {
  std::call_once(state_->once, [this] {
    state_->reports[0] = check_commutative(*this);
    state_->reports[1] = check_decomposable(*this);
    state_->reports[2] = check_associative(*this);
  });
  return state_->reports[static_cast<std::size_t>(p)];
}

namespace detail {

inline DiamondRule::Table table_of(const AlphabetRef& a,
                                   std::initializer_list<std::tuple<const char*, const char*, NCPoly>> rows) {
  DiamondRule::Table t;
  for (const auto& [x, y, v] : rows) t.emplace(std::make_pair(a->letter(x), a->letter(y)), v);
  return t;
}

inline NCPoly w(const AlphabetRef& a, std::string_view s, Laurent c = Laurent(1)) {
  return NCPoly(a, word_of(*a, s), c);
}

inline DiamondRule index_sum_rule(std::string name, const AlphabetRef& a) {
  return DiamondRule::from_generator(
      std::move(name), a, [a](Letter x, Letter y) { return NCPoly::letter(a, Letter{x.code + y.code}); },
      GeneratorTraits{true, true});
}

}  // namespace detail

/// Names accepted by builtin_rule.
inline const std::vector<std::string>& builtin_rule_names() {
  static const std::vector<std::string> names{"stuffle", "shuffle", "qstuffle", "qshuffle", "ex3", "ex4", "shsh"};
  return names;
}

/// The diamond maps of the built-in products:
///   stuffle   z_i <> z_j = z_{i+j}                    on Z
///   shuffle   <> = 0                                  on XY
///   qstuffle  e_k <> e_l = e_{k+l}                    on E
///   qshuffle  ab, ba -> -ab; bb -> -bb; aa -> h a     on AB
///   ex3       ab, ba -> -ab; bb -> -bb; aa -> -abb    on AB
///   ex4       integral shuffle                        on ABC
///   shsh      xy, yx -> -xy; yy -> -yy; xx -> xy      on XY
inline DiamondRule builtin_rule(std::string_view name) {
  using detail::w;
  if (name == "stuffle") return detail::index_sum_rule("stuffle", alphabets::z());
  if (name == "qstuffle") return detail::index_sum_rule("qstuffle", alphabets::e());
  if (name == "shuffle") {
    const auto& a = alphabets::xy();
    NCPoly zero(a);
    return DiamondRule::from_table(
        "shuffle", a, detail::table_of(a, {{"x", "x", zero}, {"x", "y", zero}, {"y", "x", zero}, {"y", "y", zero}}));
  }
  if (name == "qshuffle" || name == "ex3") {
    const auto& a = alphabets::ab();
    NCPoly aa = name == "qshuffle" ? w(a, "a", Laurent::hbar(1)) : w(a, "abb", Laurent(-1));
    return DiamondRule::from_table(std::string(name), a,
                                   detail::table_of(a, {{"a", "b", w(a, "ab", -1)},
                                                        {"b", "a", w(a, "ab", -1)},
                                                        {"b", "b", w(a, "bb", -1)},
                                                        {"a", "a", aa}}));
  }
  if (name == "ex4") {
    const auto& a = alphabets::abc();
    NCPoly zero(a);
    return DiamondRule::from_table("ex4", a,
                                   detail::table_of(a, {{"a", "b", zero},
                                                        {"b", "a", zero},
                                                        {"b", "b", w(a, "bc", -1)},
                                                        {"a", "a", w(a, "a", Laurent::hbar(1))},
                                                        {"c", "a", w(a, "ac", -1)},
                                                        {"a", "c", w(a, "ac", -1)},
                                                        {"c", "b", w(a, "bc", -1)},
                                                        {"b", "c", w(a, "bc", -1)},
                                                        {"c", "c", w(a, "cc", -1)}}));
  }
  if (name == "shsh") {
    const auto& a = alphabets::xy();
    return DiamondRule::from_table("shsh", a,
                                   detail::table_of(a, {{"x", "y", w(a, "xy", -1)},
                                                        {"y", "x", w(a, "xy", -1)},
                                                        {"y", "y", w(a, "yy", -1)},
                                                        {"x", "x", w(a, "xy")}}));
  }
  throw unknown_name("unknown rule '" + std::string(name) + "'");
}

/// The pair of maps attached to a choice of e_0 <> e_0:
///   e_k <>_E e_l = a^(k+l) (e_0 <>_E e_0)                on E
///   a <>_L a = h^2 sigma(e_0 <>_E e_0), a <>_L b = b <>_L a = -ab, b <>_L b = -bb   on AB
struct DualPair {
  DiamondRule rule_e;
  DiamondRule rule_l;
};

/// The seed (over E or AB) must end every word in b and have all its words
/// of one common length in a,b ("fixed length").
inline DualPair build_dual_pair(const NCPoly& seed) {
  NCPoly seed_ab = to_letter_form(seed);
  if (!detail::is_ab(seed_ab.alphabet()))
    throw alphabet_mismatch("dual-pair seed must live over E or AB, got " + seed.alphabet()->name());
  std::optional<std::size_t> len;
  for (const auto& [w, c] : seed_ab.terms()) {
    if (w.empty()) throw std::invalid_argument("dual-pair seed contains the empty word");
    if (len && *len != w.size())
      throw std::invalid_argument("dual-pair seed " + to_text(seed_ab) + " is not of fixed length");
    len = w.size();
  }
  NCPoly seed_e = to_index_form(seed_ab);  // throws unless every word ends in b
  const auto& e = alphabets::e();
  const bool additive = seed_e == NCPoly(e, Word{Letter{0}});
  const std::string label = to_text(seed_e);
  DiamondRule rule_e = DiamondRule::from_generator(
      "dualE[" + label + "]", e,
      [seed_e, e](Letter x, Letter y) {
        NCPoly out(e);
        for (const auto& [w, c] : seed_e.terms()) {
          std::vector<Letter> v(w.begin(), w.end());
          v.front().code += x.code + y.code;
          out.add_term(Word(std::move(v)), c);
        }
        return out;
      },
      GeneratorTraits{additive, true});

  const auto& ab = alphabets::ab();
  NCPoly aa = Laurent::hbar(2) * sigma(seed_ab);
  DiamondRule rule_l = DiamondRule::from_table("dualL[" + label + "]", ab,
                                               detail::table_of(ab, {{"a", "a", aa},
                                                                     {"a", "b", detail::w(ab, "ab", -1)},
                                                                     {"b", "a", detail::w(ab, "ab", -1)},
                                                                     {"b", "b", detail::w(ab, "bb", -1)}}));
  return DualPair{std::move(rule_e), std::move(rule_l)};
}

}  // namespace qsh
