#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qsh/diamond.hpp"
#include "qsh/involutions.hpp"

namespace qsh {

/// Evaluates the generalized quasi-shuffle product of a rule,
///   1 * w = w * 1 = w,
///   x * y = F(x)(R(x) * y) + F(y)(x * R(y)) + (F(x) <> F(y))(R(x) * R(y)),
/// and its dual recursion on last letters. The diamond output multiplies the
/// recursive term from the left.
///
/// With memoization on, word-pair results are cached in a table shared by all
/// copies of the handle; entries are only ever inserted with the value the
/// recursion defines, so concurrent use is safe.
class ProductHandle {
 public:
  explicit ProductHandle(DiamondRule rule, bool memoize = true)
      : rule_(std::move(rule)), memoize_(memoize), memo_(std::make_shared<Memo>()) {
    // Operand order may only be normalized when x * y = y * x is guaranteed
    // for every letter, not just within a checker bound.
    symmetric_ = rule_.traits().symmetric ||
                 (rule_.is_table() && rule_.cached_report(Property::commutative).holds);
  }

  const DiamondRule& rule() const noexcept { return rule_; }
  const AlphabetRef& alphabet() const noexcept { return rule_.alphabet(); }
  bool memoized() const noexcept { return memoize_; }

  std::size_t cache_size() const {
    std::lock_guard lock(memo_->mu);
    return memo_->forward.size() + memo_->backward.size();
  }

  /// u * v for single words.
  NCPoly words(const Word& u, const Word& v) const { return evaluate(u, v, false); }

  /// The dual product: recursion on last letters,
  ///   x *' y = (R'x *' y)F'x + (x *' R'y)F'y + (R'x *' R'y)(F'x <> F'y).
  NCPoly dual_words(const Word& u, const Word& v) const { return evaluate(u, v, true); }

 private:
  using Key = std::pair<Word, Word>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      WordHash h;
      return h(k.first) * 31u + h(k.second);
    }
  };
  using Cache = std::unordered_map<Key, NCPoly, KeyHash>;
  struct Memo {
    mutable std::mutex mu;
    Cache forward;
    Cache backward;
  };

  static constexpr std::size_t kRecursionLimit = 64;

  Key key(const Word& u, const Word& v) const {
    if (symmetric_ && v < u) return {v, u};
    return {u, v};
  }

  std::optional<NCPoly> lookup(bool dual, const Word& u, const Word& v) const {
    std::lock_guard lock(memo_->mu);
    const Cache& c = dual ? memo_->backward : memo_->forward;
    auto it = c.find(key(u, v));
    if (it == c.end()) return std::nullopt;
    return it->second;
  }

  void store(bool dual, const Word& u, const Word& v, const NCPoly& value) const {
    std::lock_guard lock(memo_->mu);
    Cache& c = dual ? memo_->backward : memo_->forward;
    c.try_emplace(key(u, v), value);
  }

  NCPoly evaluate(const Word& u, const Word& v, bool dual) const {
    const auto& a = alphabet();
    for (const Word* w : {&u, &v})
      for (const auto& l : *w)
        if (!a->contains(l)) throw alphabet_mismatch("letter outside alphabet " + a->name());
    if (u.empty()) return NCPoly(a, v);
    if (v.empty()) return NCPoly(a, u);
    if (!memoize_ && u.size() + v.size() <= kRecursionLimit) return dual ? recurse_dual(u, v) : recurse(u, v);
    if (memoize_)
      if (auto hit = lookup(dual, u, v)) return *hit;
    return dual ? table_dual(u, v) : table(u, v);
  }

  NCPoly recurse(const Word& u, const Word& v) const {
    const auto& a = alphabet();
    if (u.empty()) return NCPoly(a, v);
    if (v.empty()) return NCPoly(a, u);
    const Word ur = u.rest(), vr = v.rest();
    NCPoly out = prepend(u.first(), recurse(ur, v));
    out += prepend(v.first(), recurse(u, vr));
    NCPoly d = rule_.apply(u.first(), v.first());
    if (!d.is_zero()) out += nc_mul(d, recurse(ur, vr));
    return out;
  }

  NCPoly recurse_dual(const Word& u, const Word& v) const {
    const auto& a = alphabet();
    if (u.empty()) return NCPoly(a, v);
    if (v.empty()) return NCPoly(a, u);
    const Word ui = u.init(), vi = v.init();
    NCPoly out = append(recurse_dual(ui, v), u.last());
    out += append(recurse_dual(u, vi), v.last());
    NCPoly d = rule_.apply(u.last(), v.last());
    if (!d.is_zero()) out += nc_mul(recurse_dual(ui, vi), d);
    return out;
  }

  // Bottom-up over suffix pairs: t[i][j] = u[i:] * v[j:].
  NCPoly table(const Word& u, const Word& v) const {
    const auto& a = alphabet();
    const std::size_t n = u.size(), m = v.size();
    std::vector<std::vector<NCPoly>> t(n + 1, std::vector<NCPoly>(m + 1, NCPoly(a)));
    for (std::size_t j = 0; j <= m; ++j) t[n][j] = NCPoly(a, v.suffix(j));
    for (std::size_t i = 0; i <= n; ++i) t[i][m] = NCPoly(a, u.suffix(i));
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t j = m; j-- > 0;) {
        const Word us = u.suffix(i), vs = v.suffix(j);
        if (memoize_ && (i > 0 || j > 0)) {
          if (auto hit = lookup(false, us, vs)) {
            t[i][j] = std::move(*hit);
            continue;
          }
        }
        NCPoly r = prepend(u[i], t[i + 1][j]);
        r += prepend(v[j], t[i][j + 1]);
        NCPoly d = rule_.apply(u[i], v[j]);
        if (!d.is_zero()) r += nc_mul(d, t[i + 1][j + 1]);
        if (memoize_) store(false, us, vs, r);
        t[i][j] = std::move(r);
      }
    }
    return t[0][0];
  }

  // Bottom-up over prefix pairs: t[i][j] = u[:i] *' v[:j].
  NCPoly table_dual(const Word& u, const Word& v) const {
    const auto& a = alphabet();
    const std::size_t n = u.size(), m = v.size();
    std::vector<std::vector<NCPoly>> t(n + 1, std::vector<NCPoly>(m + 1, NCPoly(a)));
    for (std::size_t j = 0; j <= m; ++j) t[0][j] = NCPoly(a, v.prefix(j));
    for (std::size_t i = 0; i <= n; ++i) t[i][0] = NCPoly(a, u.prefix(i));
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 1; j <= m; ++j) {
        const Word up = u.prefix(i), vp = v.prefix(j);
        if (memoize_ && (i < n || j < m)) {
          if (auto hit = lookup(true, up, vp)) {
            t[i][j] = std::move(*hit);
            continue;
          }
        }
        NCPoly r = append(t[i - 1][j], u[i - 1]);
        r += append(t[i][j - 1], v[j - 1]);
        NCPoly d = rule_.apply(u[i - 1], v[j - 1]);
        if (!d.is_zero()) r += nc_mul(t[i - 1][j - 1], d);
        if (memoize_) store(true, up, vp, r);
        t[i][j] = std::move(r);
      }
    }
    return t[n][m];
  }

  DiamondRule rule_;
  bool memoize_;
  bool symmetric_ = false;
  std::shared_ptr<Memo> memo_;
};

namespace detail {

template <class F>
NCPoly bilinear(const ProductHandle& h, const NCPoly& u, const NCPoly& v, F&& on_words) {
  require_same_alphabet(h.alphabet(), u.alphabet());
  require_same_alphabet(h.alphabet(), v.alphabet());
  NCPoly out(h.alphabet());
  for (const auto& [wu, cu] : u.terms())
    for (const auto& [wv, cv] : v.terms()) out.add_scaled(on_words(wu, wv), cu * cv);
  return out;
}

}  // namespace detail

/// Generalized quasi-shuffle product, extended bilinearly.
inline NCPoly gqsh(const ProductHandle& h, const NCPoly& u, const NCPoly& v) {
  return detail::bilinear(h, u, v, [&h](const Word& a, const Word& b) { return h.words(a, b); });
}

/// Generalized dual product, extended bilinearly.
inline NCPoly gqsh_dual(const ProductHandle& h, const NCPoly& u, const NCPoly& v) {
  return detail::bilinear(h, u, v, [&h](const Word& a, const Word& b) { return h.dual_words(a, b); });
}

inline const std::vector<std::string>& product_names() {
  static const std::vector<std::string> names{"stuffle", "shuffle", "qstuffle", "qshuffle", "shsh"};
  return names;
}

/// Shared memoized handle for a built-in rule name (any of builtin_rule_names()).
inline const ProductHandle& builtin_handle(std::string_view name) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<ProductHandle>, std::less<>> handles;
  std::lock_guard lock(mu);
  auto it = handles.find(name);
  if (it == handles.end())
    it = handles.emplace(std::string(name), std::make_unique<ProductHandle>(builtin_rule(name))).first;
  return *it->second;
}

/// Product by name, converting operands between index and letter form as
/// needed (z_k <-> x^(k-1)y, e_k <-> a^k b). The result comes back in the
/// form of the first operand when every word allows it.
inline NCPoly named_product(std::string_view name, const NCPoly& u, const NCPoly& v) {
  const ProductHandle& h = builtin_handle(name);
  const auto& target = h.alphabet();
  NCPoly out = gqsh(h, convert(u, target), convert(v, target));
  if (same_alphabet(u.alphabet(), target)) return out;
  if (detail::is_z(u.alphabet()) || detail::is_e(u.alphabet())) return restore_form(to_letter_form(out), u.alphabet());
  return to_letter_form(out);
}

/// D(u, v) = u sh_Sh v - u sh v over XY; the result keeps u's form.
inline NCPoly dpart(const NCPoly& u, const NCPoly& v) {
  const auto& xy = alphabets::xy();
  NCPoly uu = convert(u, xy), vv = convert(v, xy);
  NCPoly out = gqsh(builtin_handle("shsh"), uu, vv) - gqsh(builtin_handle("shuffle"), uu, vv);
  return restore_form(out, u.alphabet());
}

/// ds(u, v) = u sh v - u * v for u, v in h^0; the result keeps u's form.
inline NCPoly ds(const NCPoly& u, const NCPoly& v) {
  for (const NCPoly* p : {&u, &v})
    if (!membership(*p, Space::H0)) throw not_admissible("ds needs operands in h^0, got " + to_text(*p));
  NCPoly uz = convert(u, alphabets::z()), vz = convert(v, alphabets::z());
  NCPoly out = named_product("shuffle", uz, vz) - gqsh(builtin_handle("stuffle"), uz, vz);
  return convert(out, u.is_zero() ? alphabets::z() : u.alphabet());
}

}  // namespace qsh
