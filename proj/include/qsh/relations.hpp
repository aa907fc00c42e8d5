#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qsh/product.hpp"
#include "qsh/series.hpp"

namespace qsh {

inline constexpr double default_tolerance = 1e-3;

enum class CheckStatus { exact_pass, numeric_pass, fail };

inline std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::exact_pass: return "exact-pass";
    case CheckStatus::numeric_pass: return "numeric-pass";
    case CheckStatus::fail: return "fail";
  }
  return "?";
}

/// Outcome of one verification. Exact checks leave `residual` empty; numeric
/// checks always report it. A failure carries a reproducible witness.
struct CheckResult {
  std::string check_id;
  std::string inputs;
  CheckStatus status = CheckStatus::fail;
  std::optional<double> residual;
  std::string witness;

  bool passed() const noexcept { return status != CheckStatus::fail; }
};

struct NumericParams {
  long cutoff = default_cutoff;
  double tolerance = default_tolerance;
};

namespace detail {

inline CheckResult exact(std::string id, std::string inputs, bool ok, std::string witness = {}) {
  return CheckResult{std::move(id), std::move(inputs), ok ? CheckStatus::exact_pass : CheckStatus::fail,
                     std::nullopt, ok ? std::string() : std::move(witness)};
}

inline CheckResult numeric(std::string id, std::string inputs, double residual, double tol, std::string what) {
  const bool ok = std::isfinite(residual) && residual <= tol;
  return CheckResult{std::move(id), std::move(inputs), ok ? CheckStatus::numeric_pass : CheckStatus::fail, residual,
                     ok ? std::string() : what + ": residual " + std::to_string(residual) + " > tol " +
                                              std::to_string(tol)};
}

inline std::string pair_inputs(const NCPoly& u, const NCPoly& v) { return "u=" + to_text(u) + ", v=" + to_text(v); }

inline void require(const NCPoly& p, Space s, const char* what) {
  if (!membership(p, s)) throw not_admissible(std::string(what) + ": operand " + to_text(p) + " not admissible");
}

inline std::string series_difference(const QSeries& a, const QSeries& b) {
  const int n = std::min(a.order(), b.order());
  for (int k = 0; k <= n; ++k)
    if (a.coefficient(k) != b.coefficient(k))
      return "coefficient of q^" + std::to_string(k) + ": " + to_string(a.coefficient(k)) + " vs " +
             to_string(b.coefficient(k));
  return {};
}

inline std::string poly_difference(const NCPoly& lhs, const NCPoly& rhs) {
  return "lhs = " + to_text(lhs) + ", rhs = " + to_text(rhs);
}

}  // namespace detail

/// zeta(u) zeta(v) = zeta(u . v) for stuffle/shuffle (numeric, partial sums)
/// and zeta_q(u) zeta_q(v) = zeta_q(u . v) for qstuffle/qshuffle (exact).
inline CheckResult verify_product_hom(std::string_view product, const NCPoly& u, const NCPoly& v,
                                      int order = default_q_order, NumericParams num = {}) {
  const std::string id = "product-hom";
  const std::string inputs = "product=" + std::string(product) + ", " + detail::pair_inputs(u, v);
  if (product == "qstuffle" || product == "qshuffle") {
    detail::require(u, Space::Hhat0, "product-hom");
    detail::require(v, Space::Hhat0, "product-hom");
    ZetaQ zq(order);
    QSeries lhs = zq(u) * zq(v);
    QSeries rhs = zq(named_product(product, u, v));
    return detail::exact(id, inputs, lhs == rhs, detail::series_difference(lhs, rhs));
  }
  if (product == "stuffle" || product == "shuffle") {
    detail::require(u, Space::H0, "product-hom");
    detail::require(v, Space::H0, "product-hom");
    const double lhs = mzv_partial(u, num.cutoff) * mzv_partial(v, num.cutoff);
    const double rhs = mzv_partial(named_product(product, u, v), num.cutoff);
    return detail::numeric(id, inputs, std::fabs(lhs - rhs), num.tolerance, "zeta(u)zeta(v) - zeta(u.v)");
  }
  throw unknown_name("product-hom: unknown product '" + std::string(product) + "'");
}

/// zeta(w) = zeta(tau w), exact when tau fixes w.
inline CheckResult verify_duality_tau(const NCPoly& w, NumericParams num = {}) {
  detail::require(w, Space::H0, "duality-tau");
  const std::string inputs = "w=" + to_text(w);
  NCPoly tw = tau(w);
  if (convert(tw, alphabets::xy()) == convert(w, alphabets::xy()))
    return CheckResult{"duality-tau", inputs, CheckStatus::exact_pass, std::nullopt, {}};
  const double r = std::fabs(mzv_partial(w, num.cutoff) - mzv_partial(tw, num.cutoff));
  return detail::numeric("duality-tau", inputs, r, num.tolerance, "zeta(w) - zeta(tau w)");
}

/// zeta(ds(u, v)) = 0, exact when ds(u, v) vanishes identically.
inline CheckResult verify_ds(const NCPoly& u, const NCPoly& v, NumericParams num = {}) {
  detail::require(u, Space::H0, "ds");
  detail::require(v, Space::H0, "ds");
  NCPoly rel = ds(u, v);
  if (rel.is_zero()) return CheckResult{"ds", detail::pair_inputs(u, v), CheckStatus::exact_pass, std::nullopt, {}};
  return detail::numeric("ds", detail::pair_inputs(u, v), std::fabs(mzv_partial(rel, num.cutoff)), num.tolerance,
                         "zeta(" + to_text(rel) + ")");
}

/// Checks sigma(sigma(w) <E> sigma(v)) = w <L> v for two product handles: the
/// first over E (or AB), the second over AB.
inline CheckResult verify_sigma_duality(std::string id, const ProductHandle& index_side,
                                        const ProductHandle& letter_side, const NCPoly& u, const NCPoly& v) {
  detail::require(u, Space::Hhat0, id.c_str());
  detail::require(v, Space::Hhat0, id.c_str());
  const auto& ab = alphabets::ab();
  NCPoly inner = gqsh(index_side, convert(sigma(u), index_side.alphabet()), convert(sigma(v), index_side.alphabet()));
  NCPoly lhs = convert(sigma(convert(inner, ab)), ab);
  NCPoly rhs = gqsh(letter_side, convert(u, ab), convert(v, ab));
  return detail::exact(std::move(id), detail::pair_inputs(u, v), lhs == rhs, detail::poly_difference(rhs, lhs));
}

/// w sh_q v = sigma(sigma(w) *_q sigma(v)).
inline CheckResult verify_q_duality(const NCPoly& u, const NCPoly& v) {
  return verify_sigma_duality("q-duality", builtin_handle("qstuffle"), builtin_handle("qshuffle"), u, v);
}

/// Admissible words over AB (a...b) with 2 <= length <= max_length, by length then lex.
inline std::vector<Word> admissible_ab_words(int max_length) {
  std::vector<Word> out;
  for (int len = 2; len <= max_length; ++len) {
    const int free = len - 2;
    for (long mask = 0; mask < (1L << free); ++mask) {
      std::vector<Letter> v{detail::kFirst};
      for (int i = free - 1; i >= 0; --i) v.push_back(((mask >> i) & 1) ? detail::kSecond : detail::kFirst);
      v.push_back(detail::kSecond);
      out.emplace_back(std::move(v));
    }
  }
  return out;
}

/// Ordered pairs of admissible AB words with total length <= bound.
inline std::vector<std::pair<Word, Word>> admissible_ab_pairs(int total_bound) {
  std::vector<std::pair<Word, Word>> out;
  auto words = admissible_ab_words(total_bound - 2);
  for (const auto& u : words)
    for (const auto& v : words)
      if (static_cast<int>(u.size() + v.size()) <= total_bound) out.emplace_back(u, v);
  return out;
}

/// Builds the dual pair for `seed` and checks sigma(sigma(w) <E> sigma(v)) = w <L> v
/// on all admissible pairs of total length <= weight_bound.
inline CheckResult verify_generalized_dual(const NCPoly& seed, int weight_bound = 4) {
  DualPair pair = build_dual_pair(seed);
  ProductHandle he(pair.rule_e), hl(pair.rule_l);
  const auto& ab = alphabets::ab();
  const std::string inputs = "seed=" + to_text(seed) + ", weight<=" + std::to_string(weight_bound);
  for (const auto& [u, v] : admissible_ab_pairs(weight_bound)) {
    CheckResult r = verify_sigma_duality("generalized-dual", he, hl, NCPoly(ab, u), NCPoly(ab, v));
    if (!r.passed()) {
      r.inputs = inputs + "; " + r.inputs;
      return r;
    }
  }
  return detail::exact("generalized-dual", inputs, true);
}

/// tau(tau(w) * tau(v)) = w sh_Sh v.
inline CheckResult verify_dual_stuffle(const NCPoly& u, const NCPoly& v) {
  detail::require(u, Space::H0, "dual-stuffle");
  detail::require(v, Space::H0, "dual-stuffle");
  const auto& xy = alphabets::xy();
  NCPoly lhs = convert(tau(named_product("stuffle", convert(tau(u), alphabets::z()), convert(tau(v), alphabets::z()))), xy);
  NCPoly rhs = gqsh(builtin_handle("shsh"), convert(u, xy), convert(v, xy));
  return detail::exact("dual-stuffle", detail::pair_inputs(u, v), lhs == rhs, detail::poly_difference(lhs, rhs));
}

/// ds(w, v) = -tau(D(tau w, tau v)).
inline CheckResult verify_ds_identity(const NCPoly& u, const NCPoly& v) {
  detail::require(u, Space::H0, "ds-identity");
  detail::require(v, Space::H0, "ds-identity");
  const auto& xy = alphabets::xy();
  NCPoly lhs = convert(ds(u, v), xy);
  NCPoly rhs = convert(-tau(dpart(convert(tau(u), xy), convert(tau(v), xy))), xy);
  return detail::exact("ds-identity", detail::pair_inputs(u, v), lhs == rhs, detail::poly_difference(lhs, rhs));
}

/// u <> v computed by both recursions.
inline CheckResult verify_dualst(const ProductHandle& h, const NCPoly& u, const NCPoly& v) {
  NCPoly lhs = gqsh(h, u, v), rhs = gqsh_dual(h, u, v);
  return detail::exact("dualst", "rule=" + h.rule().name() + ", " + detail::pair_inputs(u, v), lhs == rhs,
                       detail::poly_difference(lhs, rhs));
}

/// Nonempty words whose letter-form length ("weight") is at most `bound`:
/// plain length over finite alphabets, sum k over Z, sum (k + 1) over E.
inline std::vector<Word> words_up_to_weight(const AlphabetRef& a, int bound) {
  std::vector<Word> out;
  auto weight_of = [&](Letter l) {
    if (!a->is_indexed()) return 1;
    return detail::is_e(a) ? l.code + 1 : l.code;
  };
  std::vector<Letter> letters = a->letters(a->is_indexed() ? bound : 0);
  std::function<void(std::vector<Letter>&, int)> rec = [&](std::vector<Letter>& cur, int used) {
    if (!cur.empty()) out.emplace_back(cur);
    for (auto l : letters) {
      const int w = weight_of(l);
      if (w < 1 || used + w > bound) continue;
      cur.push_back(l);
      rec(cur, used + w);
      cur.pop_back();
    }
  };
  std::vector<Letter> cur;
  rec(cur, 0);
  std::stable_sort(out.begin(), out.end());
  return out;
}

inline int word_weight(const Word& w, const AlphabetRef& a) {
  if (!a->is_indexed()) return static_cast<int>(w.size());
  int s = 0;
  for (const auto& l : w) s += detail::is_e(a) ? l.code + 1 : l.code;
  return s;
}

/// Associativity on all triples and commutativity on all pairs of nonempty
/// words with total weight <= weight_bound. The rule must pass check_associative.
inline CheckResult verify_assoc_comm(const ProductHandle& h, int weight_bound = 7) {
  const auto& a = h.alphabet();
  const std::string inputs = "rule=" + h.rule().name() + ", weight<=" + std::to_string(weight_bound);
  const PropertyReport& pre = h.rule().cached_report(Property::associative);
  if (!pre.holds) return detail::exact("assoc-comm", inputs, false, "precondition: " + pre.witness->detail);
  const auto words = words_up_to_weight(a, weight_bound);
  std::vector<int> weights;
  for (const auto& w : words) weights.push_back(word_weight(w, a));
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = 0; j < words.size(); ++j) {
      if (weights[i] + weights[j] > weight_bound) continue;
      NCPoly uv = h.words(words[i], words[j]);
      if (j > i && uv != h.words(words[j], words[i]))
        return detail::exact("assoc-comm", inputs, false,
                             "u=" + to_string(words[i], *a) + ", v=" + to_string(words[j], *a) + ": u.v != v.u");
      for (std::size_t k = 0; k < words.size(); ++k) {
        if (weights[i] + weights[j] + weights[k] > weight_bound) continue;
        NCPoly w(a, words[k]);
        NCPoly lhs = gqsh(h, uv, w);
        NCPoly rhs = gqsh(h, NCPoly(a, words[i]), h.words(words[j], words[k]));
        if (lhs != rhs)
          return detail::exact("assoc-comm", inputs, false,
                               "(u,v,w)=(" + to_string(words[i], *a) + ", " + to_string(words[j], *a) + ", " +
                                   to_string(words[k], *a) + "): " + detail::poly_difference(lhs, rhs));
      }
    }
  }
  return detail::exact("assoc-comm", inputs, true);
}

/// Admissible z-words (k_1 >= 2) of weight exactly `weight`, by lex order of indices.
inline std::vector<Word> admissible_z_words(int weight) {
  std::vector<Word> out;
  for (const auto& w : words_up_to_weight(alphabets::z(), weight))
    if (word_weight(w, alphabets::z()) == weight && w.first().code >= 2) out.push_back(w);
  return out;
}

struct DsRelation {
  NCPoly u;
  NCPoly v;
  NCPoly relation;
  double residual;
};

/// ds(u, v) for all unordered pairs of admissible z-words with wt(u) + wt(v) = weight,
/// ordered by wt(u), then u, then v; each with |zeta_partial(ds(u, v))|.
inline std::vector<DsRelation> enumerate_ds_relations(int weight, long cutoff = default_cutoff) {
  if (weight < 4) throw std::domain_error("double shuffle relations start at weight 4");
  const auto& z = alphabets::z();
  std::vector<DsRelation> out;
  for (int wu = 2; 2 * wu <= weight; ++wu) {
    const auto us = admissible_z_words(wu);
    const auto vs = admissible_z_words(weight - wu);
    for (const auto& u : us) {
      for (const auto& v : vs) {
        if (wu * 2 == weight && v < u) continue;
        NCPoly pu(z, u), pv(z, v);
        NCPoly rel = ds(pu, pv);
        out.push_back(DsRelation{pu, pv, rel, std::fabs(mzv_partial(rel, cutoff))});
      }
    }
  }
  return out;
}

}  // namespace qsh
