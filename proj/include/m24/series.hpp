#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "m24/cyclotomic.hpp"
#include "m24/rational.hpp"

namespace m24 {

// Truncation order; nullopt means the series is exact (a polynomial).
using Trunc = std::optional<Rational>;

inline Trunc trunc_min(const Trunc& a, const Trunc& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

inline Trunc trunc_shift(const Trunc& a, const Rational& s) {
  if (!a) return a;
  return *a + s;
}

// Truncated series sum_k c_k q^(k/D). Coefficients with exponent >= trunc are unknown.
template <class C>
class Series {
 public:
  Series() = default;
  explicit Series(long D, Trunc trunc = std::nullopt) : D_(D), trunc_(std::move(trunc)) {}

  static Series constant(const C& c, Trunc trunc = std::nullopt) {
    Series s(1, trunc);
    s.add(0, c);
    return s;
  }
  // c q^e
  static Series monomial(const Rational& e, const C& c, Trunc trunc = std::nullopt) {
    long D = to_long(Integer(e.get_den()));
    Series s(D, trunc);
    s.add(to_long(Integer(e.get_num())), c);
    return s;
  }

  long denom() const { return D_; }
  const Trunc& trunc() const { return trunc_; }
  const std::map<long, C>& terms() const { return t_; }
  bool exact() const { return !trunc_.has_value(); }
  bool empty() const { return t_.empty(); }

  Rational exponent(long k) const { return make_q(k, D_); }

  // Adds c q^(k/D); terms at or above the truncation are dropped.
  void add(long k, const C& c) {
    if (is_zero(c)) return;
    if (trunc_ && make_q(k, D_) >= *trunc_) return;
    auto [it, ins] = t_.try_emplace(k, c);
    if (!ins) {
      it->second += c;
      if (is_zero(it->second)) t_.erase(it);
    }
  }
  void add_at(const Rational& e, const C& c) {
    Rational x = e * D_;
    if (!is_integer(x)) {
      long nd = lcm(D_, to_long(Integer(e.get_den())));
      *this = with_denom(nd);
      x = e * D_;
    }
    add(to_long(x), c);
  }

  C coeff(const Rational& e) const {
    Rational x = e * D_;
    if (trunc_ && e >= *trunc_) throw std::out_of_range("coefficient beyond truncation");
    if (!is_integer(x)) return C();
    auto it = t_.find(to_long(x));
    return it == t_.end() ? C() : it->second;
  }

  // Lowest stored exponent; for an empty series the truncation order.
  Trunc valuation() const {
    if (!t_.empty()) return exponent(t_.begin()->first);
    return trunc_;
  }

  Series with_denom(long nd) const {
    if (nd == D_) return *this;
    if (nd % D_ != 0) throw std::invalid_argument("with_denom: must be a multiple");
    long f = nd / D_;
    Series s(nd, trunc_);
    for (const auto& [k, c] : t_) s.t_.emplace(k * f, c);
    return s;
  }

  // Reduces the denominator as far as the stored exponents allow.
  Series normalized() const {
    long g = D_;
    for (const auto& kv : t_) g = gcd(g, kv.first);
    if (g <= 1) return *this;
    Series s(D_ / g, trunc_);
    for (const auto& [k, c] : t_) s.t_.emplace(k / g, c);
    return s;
  }

  Series truncated(const Rational& T) const {
    Series s(D_, trunc_min(trunc_, T));
    for (const auto& [k, c] : t_)
      if (exponent(k) < *s.trunc_) s.t_.emplace(k, c);
    return s;
  }

  Series operator-() const {
    Series s = *this;
    for (auto& kv : s.t_) kv.second = -kv.second;
    return s;
  }

  Series& operator+=(const Series& o) {
    long nd = lcm(D_, o.D_);
    Series a = with_denom(nd);
    Series b = o.with_denom(nd);
    Series s(nd, trunc_min(trunc_, o.trunc_));
    for (const auto& [k, c] : a.t_) s.add(k, c);
    for (const auto& [k, c] : b.t_) s.add(k, c);
    return *this = s;
  }
  Series& operator-=(const Series& o) { return *this += -o; }

  Series scaled(const C& c) const {
    Series s(D_, trunc_);
    if (is_zero(c)) return s;
    for (const auto& [k, v] : t_) {
      C x = v;
      x *= c;
      s.add(k, x);
    }
    return s;
  }

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }

  friend Series operator*(const Series& a, const Series& b) {
    long nd = lcm(a.D_, b.D_);
    Series x = a.with_denom(nd), y = b.with_denom(nd);
    Trunc T;
    if (x.trunc_) T = trunc_min(T, *x.trunc_ + val_or(y));
    if (y.trunc_) T = trunc_min(T, *y.trunc_ + val_or(x));
    Series s(nd, T);
    for (const auto& [ka, ca] : x.t_) {
      for (const auto& [kb, cb] : y.t_) {
        if (T && make_q(ka + kb, nd) >= *T) break;
        C p = ca;
        p *= cb;
        s.add(ka + kb, p);
      }
    }
    return s;
  }
  Series& operator*=(const Series& o) { return *this = *this * o; }

  // Multiplicative inverse; valid to trunc - 2 v for valuation v.
  Series inverse() const {
    if (t_.empty()) throw std::domain_error("inverse of a series with no known terms");
    long v = t_.begin()->first;
    Rational ve = exponent(v);
    C c0inv = m24::inverse(t_.begin()->second);
    Trunc T = trunc_ ? Trunc(*trunc_ - 2 * ve) : Trunc();
    if (!T) {
      if (t_.size() != 1) throw std::domain_error("inverse of an exact non-monomial needs a truncation order");
      Series s(D_);
      s.add(-v, c0inv);
      return s;
    }
    // u = q^(-v) * this = c0 (1 + w); solve b * u = 1 term by term.
    Series s(D_, T);
    std::map<long, C> b;
    for (long n = 0; make_q(n, D_) < *T + ve; ++n) {
      C acc = n == 0 ? C(Rational(1)) : C();
      for (const auto& [k, c] : t_) {
        long j = k - v;
        if (j == 0) continue;
        if (j > n) break;
        auto it = b.find(n - j);
        if (it == b.end()) continue;
        C p = c;
        p *= it->second;
        acc -= p;
      }
      if (is_zero(acc)) continue;
      acc *= c0inv;
      b.emplace(n, acc);
    }
    for (const auto& [n, c] : b) s.add(n - v, c);
    return s;
  }

  // Integer power; negative powers go through inverse().
  Series pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Series r = Series::constant(C(Rational(1)));
    Series b = *this;
    while (e > 0) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  // exp of a series with positive valuation.
  Series exp() const {
    if (!t_.empty() && t_.begin()->first <= 0) throw std::domain_error("exp needs positive valuation");
    if (!trunc_) throw std::domain_error("exp needs a truncation order");
    // y' = x' y, solved on integer keys: k y_k = sum_j j x_j y_{k-j}
    Series s(D_, trunc_);
    std::map<long, C> y;
    y.emplace(0, C(Rational(1)));
    long kmax = to_long(floor(*trunc_ * D_));
    if (is_integer(*trunc_ * D_)) --kmax;
    for (long k = 1; k <= kmax; ++k) {
      C acc;
      for (const auto& [j, c] : t_) {
        if (j > k) break;
        auto it = y.find(k - j);
        if (it == y.end()) continue;
        C p = c;
        p *= it->second;
        p *= Rational(j);
        acc += p;
      }
      if (is_zero(acc)) continue;
      acc *= make_q(1, k);
      y.emplace(k, acc);
    }
    for (const auto& [k, c] : y) s.add(k, c);
    return s;
  }

  // log of a series 1 + (positive valuation).
  Series log() const {
    if (t_.empty() || t_.begin()->first != 0 || t_.begin()->second != C(Rational(1)))
      throw std::domain_error("log needs constant term 1");
    if (t_.size() > 1 && std::next(t_.begin())->first <= 0) throw std::domain_error("log needs 1 + O(q^+)");
    if (!trunc_) throw std::domain_error("log needs a truncation order");
    // k l_k = k a_k - sum_{0<j<k} j l_j a_{k-j}
    Series s(D_, trunc_);
    std::map<long, C> l;
    long kmax = to_long(floor(*trunc_ * D_));
    if (is_integer(*trunc_ * D_)) --kmax;
    for (long k = 1; k <= kmax; ++k) {
      C acc;
      auto it = t_.find(k);
      if (it != t_.end()) {
        acc = it->second;
        acc *= Rational(k);
      }
      for (const auto& [j, lj] : l) {
        if (j >= k) break;
        auto at = t_.find(k - j);
        if (at == t_.end()) continue;
        C p = lj;
        p *= at->second;
        p *= Rational(j);
        acc -= p;
      }
      if (is_zero(acc)) continue;
      acc *= make_q(1, k);
      l.emplace(k, acc);
    }
    for (const auto& [k, c] : l) s.add(k, c);
    return s;
  }

  // q -> q^m for a positive integer m.
  Series substitute(long m) const {
    Series s(D_, trunc_ ? Trunc(*trunc_ * m) : Trunc());
    for (const auto& [k, c] : t_) s.t_.emplace(k * m, c);
    return s;
  }

  // Multiplication by q^e.
  Series shifted(const Rational& e) const {
    long nd = lcm(D_, to_long(Integer(e.get_den())));
    Series a = with_denom(nd);
    long sh = to_long(e * nd);
    Series s(nd, trunc_shift(trunc_, e));
    for (const auto& [k, c] : a.t_) s.t_.emplace(k + sh, c);
    return s;
  }

  template <class F>
  auto map_coeffs(F f) const {
    using R = decltype(f(std::declval<C>()));
    Series<R> s(D_, trunc_);
    for (const auto& [k, c] : t_) s.add(k, f(c));
    return s;
  }

  // Equality of sparse maps and truncation claims.
  friend bool operator==(const Series& a, const Series& b) {
    if (a.trunc_ != b.trunc_) return false;
    long nd = lcm(a.D_, b.D_);
    return a.with_denom(nd).t_ == b.with_denom(nd).t_;
  }

  // Agreement on the common known range.
  bool agrees_with(const Series& o) const {
    Trunc T = trunc_min(trunc_, o.trunc_);
    Series a = T ? truncated(*T) : *this;
    Series b = T ? o.truncated(*T) : o;
    long nd = lcm(a.D_, b.D_);
    return a.with_denom(nd).t_ == b.with_denom(nd).t_;
  }

  std::string str(const std::string& var = "q") const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : t_) {
      if (!first) os << " + ";
      first = false;
      std::string cs = coeff_str(c);
      bool compound = cs.find_first_of("+ ") != std::string::npos;
      if (k == 0) {
        os << (compound ? "(" + cs + ")" : cs);
        continue;
      }
      os << (compound ? "(" + cs + ")" : cs) << "*" << var;
      Rational e = exponent(k);
      if (e != 1) os << "^" << (is_integer(e) ? e.get_str() : "(" + e.get_str() + ")");
    }
    if (first) os << "0";
    if (trunc_) os << " + O(" << var << "^" << (is_integer(*trunc_) ? trunc_->get_str() : "(" + trunc_->get_str() + ")") << ")";
    return os.str();
  }

 private:
  static Rational val_or(const Series& s) {
    Trunc v = s.valuation();
    if (v) return *v;
    return Rational(0);  // exact zero: any bound works, the product is empty
  }

  long D_ = 1;
  Trunc trunc_;
  std::map<long, C> t_;
};

using QSeries = Series<Rational>;
using CSeries = Series<Cyclotomic>;

inline CSeries to_cyclotomic(const QSeries& s) {
  return s.map_coeffs([](const Rational& r) { return Cyclotomic(r); });
}

// Converts a series whose coefficients are all rational; throws otherwise.
inline QSeries to_rational(const CSeries& s) {
  return s.map_coeffs([](const Cyclotomic& c) { return c.to_rational(); });
}

}  // namespace m24
