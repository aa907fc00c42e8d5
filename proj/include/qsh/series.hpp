#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsh/involutions.hpp"
#include "qsh/ncpoly.hpp"
#include "qsh/rational.hpp"

namespace qsh {

inline constexpr int default_q_order = 30;
inline constexpr int default_z_order = 30;
inline constexpr long default_cutoff = 100000;

/// Truncated power series in q: coefficients of q^0..q^order, exact.
class QSeries {
 public:
  explicit QSeries(int order = default_q_order) : c_(static_cast<std::size_t>(check_order(order)) + 1) {}

  static QSeries constant(const Rational& c, int order) {
    QSeries s(order);
    s.c_[0] = c;
    return s;
  }
  static QSeries one(int order) { return constant(Rational(1), order); }

  /// c * q^k (zero when k exceeds the order).
  static QSeries monomial(int k, const Rational& c, int order) {
    QSeries s(order);
    if (k < 0) throw std::domain_error("negative power of q");
    if (k <= order) s.c_[static_cast<std::size_t>(k)] = c;
    return s;
  }

  static QSeries from_coefficients(const std::vector<Rational>& coeffs, int order) {
    QSeries s(order);
    for (std::size_t i = 0; i < coeffs.size() && i < s.c_.size(); ++i) s.c_[i] = coeffs[i];
    return s;
  }

  /// 1 / (1 - q) = 1 + q + q^2 + ...
  static QSeries geometric(int order) {
    QSeries s(order);
    for (auto& c : s.c_) c = 1;
    return s;
  }

  int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coefficients() const noexcept { return c_; }

  Rational coefficient(int k) const {
    if (k < 0 || k > order()) throw std::out_of_range("q-degree " + std::to_string(k) + " outside truncation");
    return c_[static_cast<std::size_t>(k)];
  }
  void set(int k, const Rational& v) { c_.at(static_cast<std::size_t>(k)) = v; }
  void add(int k, const Rational& v) {
    if (k <= order()) c_.at(static_cast<std::size_t>(k)) += v;
  }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& c) { return sgn(c) == 0; });
  }

  /// Lowest degree with a nonzero coefficient, or order + 1 for zero.
  int valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (sgn(c_[i]) != 0) return static_cast<int>(i);
    return order() + 1;
  }

  QSeries truncated(int order) const {
    if (order > this->order()) throw std::invalid_argument("cannot raise truncation order");
    QSeries s(order);
    std::copy(c_.begin(), c_.begin() + order + 1, s.c_.begin());
    return s;
  }

  QSeries& operator+=(const QSeries& o) {
    shrink(o.order());
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  QSeries& operator-=(const QSeries& o) {
    shrink(o.order());
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  QSeries& operator*=(const Rational& s) {
    for (auto& c : c_) c *= s;
    return *this;
  }

  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend QSeries operator-(QSeries a) {
    for (auto& c : a.c_) c = -c;
    return a;
  }
  friend QSeries operator*(QSeries a, const Rational& s) { return a *= s; }
  friend QSeries operator*(const Rational& s, QSeries a) { return a *= s; }

  friend QSeries operator*(const QSeries& a, const QSeries& b) {
    const int n = std::min(a.order(), b.order());
    QSeries out(n);
    Rational t;
    for (int i = 0; i <= n; ++i) {
      if (sgn(a.c_[i]) == 0) continue;
      for (int j = 0; i + j <= n; ++j) {
        if (sgn(b.c_[j]) == 0) continue;
        mpq_mul(t.get_mpq_t(), a.c_[i].get_mpq_t(), b.c_[j].get_mpq_t());
        out.c_[i + j] += t;
      }
    }
    return out;
  }
  QSeries& operator*=(const QSeries& o) { return *this = *this * o; }

  /// Equal coefficients up to the smaller of the two orders.
  friend bool operator==(const QSeries& a, const QSeries& b) {
    const std::size_t n = std::min(a.c_.size(), b.c_.size());
    return std::equal(a.c_.begin(), a.c_.begin() + n, b.c_.begin());
  }

 private:
  static int check_order(int order) {
    if (order < 0) throw std::invalid_argument("negative truncation order");
    return order;
  }
  void shrink(int order) {
    if (order < this->order()) c_.resize(static_cast<std::size_t>(order) + 1);
  }

  std::vector<Rational> c_;
};

/// Truncated series in q and z: one QSeries row per power z^0..z^order_z.
class QZSeries {
 public:
  QZSeries(int order_q = default_q_order, int order_z = default_z_order)
      : rows_(static_cast<std::size_t>(std::max(order_z, -1) + 1), QSeries(order_q)), order_q_(order_q) {
    if (order_z < 0) throw std::invalid_argument("negative z truncation order");
  }

  static QZSeries one(int order_q, int order_z) {
    QZSeries s(order_q, order_z);
    s.rows_[0] = QSeries::one(order_q);
    return s;
  }

  int order_q() const noexcept { return order_q_; }
  int order_z() const noexcept { return static_cast<int>(rows_.size()) - 1; }

  const QSeries& row(int m) const { return rows_.at(static_cast<std::size_t>(m)); }
  QSeries& row(int m) { return rows_.at(static_cast<std::size_t>(m)); }

  /// Coefficient of q^u z^m.
  Rational coefficient(int u, int m) const { return row(m).coefficient(u); }

  bool is_zero() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const QSeries& r) { return r.is_zero(); });
  }

  QZSeries truncated(int order_q, int order_z) const {
    QZSeries s(order_q, order_z);
    for (int m = 0; m <= order_z; ++m) s.rows_[m] = row(m).truncated(order_q);
    return s;
  }

  friend QZSeries operator+(const QZSeries& a, const QZSeries& b) { return combine(a, b, 1); }
  friend QZSeries operator-(const QZSeries& a, const QZSeries& b) { return combine(a, b, -1); }
  QZSeries& operator+=(const QZSeries& o) { return *this = *this + o; }

  friend QZSeries operator*(const QZSeries& a, const QZSeries& b) {
    const int nq = std::min(a.order_q(), b.order_q());
    const int nz = std::min(a.order_z(), b.order_z());
    QZSeries out(nq, nz);
    for (int i = 0; i <= nz; ++i) {
      if (a.rows_[i].is_zero()) continue;
      for (int j = 0; i + j <= nz; ++j) {
        if (b.rows_[j].is_zero()) continue;
        out.rows_[i + j] += a.rows_[i] * b.rows_[j];
      }
    }
    return out;
  }

  /// Multiplies every row by a q-series.
  friend QZSeries operator*(const QSeries& s, const QZSeries& g) {
    QZSeries out(std::min(s.order(), g.order_q()), g.order_z());
    for (int m = 0; m <= g.order_z(); ++m)
      if (!g.rows_[m].is_zero()) out.rows_[m] = s * g.rows_[m];
    return out;
  }

  friend bool operator==(const QZSeries& a, const QZSeries& b) {
    const int nz = std::min(a.order_z(), b.order_z());
    for (int m = 0; m <= nz; ++m)
      if (!(a.rows_[m] == b.rows_[m])) return false;
    return true;
  }

 private:
  static QZSeries combine(const QZSeries& a, const QZSeries& b, int sign) {
    const int nq = std::min(a.order_q(), b.order_q());
    const int nz = std::min(a.order_z(), b.order_z());
    QZSeries out(nq, nz);
    for (int m = 0; m <= nz; ++m) {
      out.rows_[m] = a.rows_[m].truncated(nq);
      if (sign > 0) out.rows_[m] += b.rows_[m];
      else out.rows_[m] -= b.rows_[m];
    }
    return out;
  }

  std::vector<QSeries> rows_;
  int order_q_;
};

/// Substitutes h -> 1 - q; negative powers expand as (1 - q)^-k = sum C(n+k-1, k-1) q^n.
inline QSeries hbar_eval(const Laurent& c, int order) {
  QSeries out(order);
  for (const auto& [e, r] : c.terms()) {
    for (int n = 0; n <= order; ++n) {
      Rational b = e >= 0 ? binomial(e, n) * (n % 2 == 0 ? 1 : -1) : binomial(n - e - 1, -e - 1);
      if (sgn(b) != 0) out.add(n, r * b);
    }
  }
  return out;
}

namespace detail {

// Caches q^(km) (1-q)^k / (1-q^m)^k = (q^m / [m]_q)^k at one truncation order.
class QFactors {
 public:
  explicit QFactors(int order) : order_(order) {}

  const QSeries& get(int k, int m) {
    auto key = std::make_pair(k, m);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    if (k < 0) throw std::domain_error("negative index");
    QSeries v = QSeries::one(order_);
    if (k == 1) {
      v = unit_factor(m);
    } else if (k > 1) {
      const QSeries& base = get(1, m);
      v = get(k - 1, m) * base;
    }
    return cache_.emplace(key, std::move(v)).first->second;
  }

 private:
  // q^m / (1 + q + ... + q^(m-1)) = q^m (1 - q) / (1 - q^m)
  QSeries unit_factor(int m) const {
    QSeries out(order_);
    // (1 - q) / (1 - q^m) = (1 - q) sum_j q^(jm)
    for (int j = 0; m + j * m <= order_; ++j) {
      out.add(m + j * m, Rational(1));
      out.add(m + j * m + 1, Rational(-1));
    }
    return out;
  }

  int order_;
  std::map<std::pair<int, int>, QSeries> cache_;
};

// sum_{m_1 > ... > m_r > 0, m_1 <= bound} z-row m_1 of prod factor(k_j, m_j);
// entry m of the result is the sum with m_1 = m fixed.
inline std::vector<QSeries> nested_rows(const std::vector<int>& idx, int bound, QFactors& f, int order) {
  const std::size_t r = idx.size();
  std::vector<QSeries> prefix(static_cast<std::size_t>(bound) + 1, QSeries(order));  // P_{j+1}(m)
  std::vector<QSeries> rows(static_cast<std::size_t>(bound) + 1, QSeries(order));
  for (std::size_t jj = r; jj-- > 0;) {
    const int k = idx[jj];
    std::vector<QSeries> cur(static_cast<std::size_t>(bound) + 1, QSeries(order));
    for (int m = 1; m <= bound; ++m) {
      if (jj + 1 == r) {
        cur[m] = f.get(k, m);
      } else if (!prefix[m - 1].is_zero()) {
        const QSeries& fac = f.get(k, m);
        if (!fac.is_zero()) cur[m] = fac * prefix[m - 1];
      }
    }
    if (jj == 0) {
      rows = std::move(cur);
      break;
    }
    prefix[0] = QSeries(order);
    for (int m = 1; m <= bound; ++m) prefix[m] = prefix[m - 1] + cur[m];
  }
  return rows;
}

inline std::vector<int> index_sequence(const Word& w) {
  std::vector<int> out;
  for (const auto& l : w) out.push_back(l.code);
  return out;
}

}  // namespace detail

/// q-analogue zeta_q(k_1, ..., k_r) = sum_{m_1 > ... > m_r > 0} prod q^(k_j m_j) / [m_j]_q^(k_j)
/// truncated at q^order. Needs k_1 >= 1 and k_j >= 0; the empty index gives 1.
inline QSeries zeta_q(const std::vector<int>& idx, int order = default_q_order) {
  if (idx.empty()) return QSeries::one(order);
  if (idx.front() < 1) throw not_admissible("zeta_q needs k_1 >= 1");
  for (int k : idx)
    if (k < 0) throw not_admissible("zeta_q needs indices >= 0");
  detail::QFactors f(order);
  // Each term has q-valuation >= k_1 m_1 >= m_1, so m_1 <= order suffices.
  auto rows = detail::nested_rows(idx, order, f, order);
  QSeries out(order);
  for (const auto& r : rows) out += r;
  return out;
}

/// Caching evaluator for linear combinations over E (or AB).
class ZetaQ {
 public:
  explicit ZetaQ(int order = default_q_order) : order_(order) {}
  int order() const noexcept { return order_; }

  const QSeries& operator()(const std::vector<int>& idx) {
    auto it = cache_.find(idx);
    if (it == cache_.end()) it = cache_.emplace(idx, zeta_q(idx, order_)).first;
    return it->second;
  }

  QSeries operator()(const NCPoly& p) {
    NCPoly pe = to_index_form(p);
    if (!detail::is_e(pe.alphabet())) throw alphabet_mismatch("zeta_q acts on E/AB, got " + p.alphabet()->name());
    QSeries out(order_);
    for (const auto& [w, c] : pe.terms()) {
      auto idx = detail::index_sequence(w);
      if (!idx.empty() && idx.front() < 1) throw not_admissible("zeta_q: word " + to_string(w, *pe.alphabet()) + " is not in H^0");
      out += hbar_eval(c, order_) * (*this)(idx);
    }
    return out;
  }

 private:
  int order_;
  std::map<std::vector<int>, QSeries> cache_;
};

inline QSeries zeta_q(const NCPoly& p, int order = default_q_order) {
  ZetaQ z(order);
  return z(p);
}

/// q-polylogarithm sum_{m_1 > ... > m_r > 0} z^(m_1) prod q^(k_j m_j) / [m_j]_q^(k_j),
/// indices k_j >= 0; the empty index gives 1.
inline QZSeries li_q(const std::vector<int>& idx, int order_q = default_q_order, int order_z = default_z_order) {
  if (idx.empty()) return QZSeries::one(order_q, order_z);
  for (int k : idx)
    if (k < 0) throw std::domain_error("li_q needs indices >= 0");
  QZSeries out(order_q, order_z);
  if (order_z == 0) return out;
  detail::QFactors f(order_q);
  auto rows = detail::nested_rows(idx, order_z, f, order_q);
  for (int m = 1; m <= order_z; ++m) out.row(m) = rows[m];
  return out;
}

inline QZSeries li_q(const NCPoly& p, int order_q = default_q_order, int order_z = default_z_order) {
  NCPoly pe = to_index_form(p);
  if (!detail::is_e(pe.alphabet())) throw alphabet_mismatch("li_q acts on E/AB, got " + p.alphabet()->name());
  QZSeries out(order_q, order_z);
  for (const auto& [w, c] : pe.terms()) out += hbar_eval(c, order_q) * li_q(detail::index_sequence(w), order_q, order_z);
  return out;
}

/// a.g multiplies z^m by (1-q) q^m / (1-q^m) and needs g in z Q[[q,z]];
/// b.g = z/(1-z) g.
inline QZSeries act(Letter l, const QZSeries& g) {
  const int nq = g.order_q(), nz = g.order_z();
  QZSeries out(nq, nz);
  if (l == detail::kFirst) {
    if (!g.row(0).is_zero()) throw std::domain_error("a acts only on series without a z^0 term");
    detail::QFactors f(nq);
    for (int m = 1; m <= nz; ++m)
      if (!g.row(m).is_zero()) out.row(m) = f.get(1, m) * g.row(m);
  } else if (l == detail::kSecond) {
    QSeries acc(nq);
    for (int m = 1; m <= nz; ++m) {
      acc += g.row(m - 1);
      out.row(m) = acc;
    }
  } else {
    throw alphabet_mismatch("only a and b act on Q[[q,z]]");
  }
  return out;
}

/// Letters act right to left: w = l_1 ... l_n gives l_1.(... (l_n.g)).
inline QZSeries act(const Word& w, const QZSeries& g) {
  QZSeries out = g;
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) out = act(*it, out);
  return out;
}

inline QZSeries act(const NCPoly& p, const QZSeries& g) {
  NCPoly pa = to_letter_form(p);
  if (!detail::is_ab(pa.alphabet())) throw alphabet_mismatch("only AB words act on Q[[q,z]], got " + p.alphabet()->name());
  QZSeries out(g.order_q(), g.order_z());
  for (const auto& [w, c] : pa.terms()) out += hbar_eval(c, g.order_q()) * act(w, g);
  return out;
}

namespace detail {

// Neumaier's compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) comp_ += (sum_ - t) + x;
    else comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace detail

/// Partial sum of zeta(k_1, ..., k_r) over cutoff >= m_1 > ... > m_r > 0 in
/// double precision; O(cutoff * r).
inline double mzv_partial(const std::vector<int>& idx, long cutoff = default_cutoff) {
  if (idx.empty()) return 1.0;
  if (idx.front() < 2) throw not_admissible("mzv needs k_1 >= 2");
  for (int k : idx)
    if (k < 1) throw not_admissible("mzv needs indices >= 1");
  if (cutoff < 1) return 0.0;
  const std::size_t n = static_cast<std::size_t>(cutoff);
  // prefix[m] = sum over the inner indices with their largest summation variable <= m.
  std::vector<double> prefix(n + 1, 0.0), next(n + 1, 0.0);
  for (std::size_t jj = idx.size(); jj-- > 0;) {
    const int k = idx[jj];
    const bool innermost = jj + 1 == idx.size();
    detail::CompensatedSum acc;
    next[0] = 0.0;
    for (std::size_t m = 1; m <= n; ++m) {
      const double term = std::pow(static_cast<double>(m), -k) * (innermost ? 1.0 : prefix[m - 1]);
      acc.add(term);
      next[m] = acc.value();
    }
    std::swap(prefix, next);
  }
  return prefix[n];
}

/// Extends linearly over Z or XY; coefficients must be rational.
inline double mzv_partial(const NCPoly& p, long cutoff = default_cutoff) {
  if (!p.is_rational()) throw std::domain_error("mzv needs rational coefficients");
  NCPoly pz = to_index_form(p);
  if (!detail::is_z(pz.alphabet())) throw alphabet_mismatch("mzv acts on Z/XY, got " + p.alphabet()->name());
  detail::CompensatedSum acc;
  for (const auto& [w, c] : pz.terms()) acc.add(c.constant_term().get_d() * mzv_partial(detail::index_sequence(w), cutoff));
  return acc.value();
}

}  // namespace qsh
