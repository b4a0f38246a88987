#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "m24/series.hpp"

namespace m24 {

template <class C>
using Laurent = std::map<long, C>;  // zeta-exponent key -> coefficient

// Truncated series sum c(n, r) q^(n/Dq) zeta^(r/Dz), truncated in q only.
template <class C>
class Jacobi {
 public:
  Jacobi() = default;
  Jacobi(long Dq, long Dz, Trunc trunc = std::nullopt) : Dq_(Dq), Dz_(Dz), trunc_(std::move(trunc)) {}

  long qdenom() const { return Dq_; }
  long zdenom() const { return Dz_; }
  const Trunc& trunc() const { return trunc_; }
  const std::map<long, Laurent<C>>& rows() const { return rows_; }
  bool empty() const { return rows_.empty(); }

  // Metadata carried along; products add weights and indices.
  Rational weight = 0;
  Rational index = 0;
  long level = 1;

  void add(long qk, long zk, const C& c) {
    if (is_zero(c)) return;
    if (trunc_ && make_q(qk, Dq_) >= *trunc_) return;
    auto& row = rows_[qk];
    auto [it, ins] = row.try_emplace(zk, c);
    if (!ins) {
      it->second += c;
      if (is_zero(it->second)) {
        row.erase(it);
        if (row.empty()) rows_.erase(qk);
      }
    }
  }
  void add_at(const Rational& n, const Rational& r, const C& c) {
    Rational qn = n * Dq_, zr = r * Dz_;
    if (!is_integer(qn) || !is_integer(zr)) {
      long nq = lcm(Dq_, to_long(Integer(n.get_den())));
      long nz = lcm(Dz_, to_long(Integer(r.get_den())));
      *this = with_denoms(nq, nz);
      qn = n * Dq_;
      zr = r * Dz_;
    }
    add(to_long(qn), to_long(zr), c);
  }

  C coeff(const Rational& n, const Rational& r) const {
    if (trunc_ && n >= *trunc_) throw std::out_of_range("coefficient beyond truncation");
    Rational qn = n * Dq_, zr = r * Dz_;
    if (!is_integer(qn) || !is_integer(zr)) return C();
    auto it = rows_.find(to_long(qn));
    if (it == rows_.end()) return C();
    auto jt = it->second.find(to_long(zr));
    return jt == it->second.end() ? C() : jt->second;
  }

  Trunc valuation() const {
    if (!rows_.empty()) return make_q(rows_.begin()->first, Dq_);
    return trunc_;
  }

  Jacobi with_denoms(long nq, long nz) const {
    if (nq == Dq_ && nz == Dz_) return *this;
    if (nq % Dq_ || nz % Dz_) throw std::invalid_argument("with_denoms: must be multiples");
    long fq = nq / Dq_, fz = nz / Dz_;
    Jacobi s(nq, nz, trunc_);
    s.copy_meta(*this);
    for (const auto& [qk, row] : rows_) {
      auto& out = s.rows_[qk * fq];
      for (const auto& [zk, c] : row) out.emplace(zk * fz, c);
    }
    return s;
  }

  Jacobi normalized() const {
    long gq = Dq_, gz = Dz_;
    for (const auto& [qk, row] : rows_) {
      gq = gcd(gq, qk);
      for (const auto& kv : row) gz = gcd(gz, kv.first);
    }
    if (gq == 0) gq = 1;
    if (gz == 0) gz = 1;
    Jacobi s(Dq_ / gq, Dz_ / gz, trunc_);
    s.copy_meta(*this);
    for (const auto& [qk, row] : rows_) {
      auto& out = s.rows_[qk / gq];
      for (const auto& [zk, c] : row) out.emplace(zk / gz, c);
    }
    return s;
  }

  Jacobi truncated(const Rational& T) const {
    Jacobi s(Dq_, Dz_, trunc_min(trunc_, T));
    s.copy_meta(*this);
    for (const auto& [qk, row] : rows_)
      if (make_q(qk, Dq_) < *s.trunc_) s.rows_.emplace(qk, row);
    return s;
  }

  Jacobi operator-() const {
    Jacobi s = *this;
    for (auto& [qk, row] : s.rows_)
      for (auto& kv : row) kv.second = -kv.second;
    return s;
  }

  Jacobi& operator+=(const Jacobi& o) {
    long nq = lcm(Dq_, o.Dq_), nz = lcm(Dz_, o.Dz_);
    Jacobi a = with_denoms(nq, nz), b = o.with_denoms(nq, nz);
    Jacobi s(nq, nz, trunc_min(trunc_, o.trunc_));
    s.copy_meta(*this);
    for (const auto& [qk, row] : a.rows_)
      for (const auto& [zk, c] : row) s.add(qk, zk, c);
    for (const auto& [qk, row] : b.rows_)
      for (const auto& [zk, c] : row) s.add(qk, zk, c);
    return *this = s;
  }
  Jacobi& operator-=(const Jacobi& o) { return *this += -o; }
  friend Jacobi operator+(Jacobi a, const Jacobi& b) { return a += b; }
  friend Jacobi operator-(Jacobi a, const Jacobi& b) { return a -= b; }

  Jacobi scaled(const C& c) const {
    Jacobi s(Dq_, Dz_, trunc_);
    s.copy_meta(*this);
    for (const auto& [qk, row] : rows_)
      for (const auto& [zk, v] : row) {
        C x = v;
        x *= c;
        s.add(qk, zk, x);
      }
    return s;
  }

  friend Jacobi operator*(const Jacobi& a, const Jacobi& b) {
    long nq = lcm(a.Dq_, b.Dq_), nz = lcm(a.Dz_, b.Dz_);
    Jacobi x = a.with_denoms(nq, nz), y = b.with_denoms(nq, nz);
    Trunc T;
    if (x.trunc_) T = trunc_min(T, *x.trunc_ + val_or(y));
    if (y.trunc_) T = trunc_min(T, *y.trunc_ + val_or(x));
    Jacobi s(nq, nz, T);
    s.weight = a.weight + b.weight;
    s.index = a.index + b.index;
    s.level = lcm(a.level, b.level);
    for (const auto& [qa, ra] : x.rows_) {
      for (const auto& [qb, rb] : y.rows_) {
        if (T && make_q(qa + qb, nq) >= *T) break;
        for (const auto& [za, ca] : ra)
          for (const auto& [zb, cb] : rb) {
            C p = ca;
            p *= cb;
            s.add(qa + qb, za + zb, p);
          }
      }
    }
    return s;
  }
  Jacobi& operator*=(const Jacobi& o) { return *this = *this * o; }

  // Embeds a zeta-free series.
  static Jacobi from_series(const Series<C>& f, Rational weight = 0) {
    Jacobi s(f.denom(), 1, f.trunc());
    s.weight = weight;
    for (const auto& [k, c] : f.terms()) s.add(k, 0, c);
    return s;
  }
  friend Jacobi operator*(const Jacobi& a, const Series<C>& f) {
    Jacobi b = from_series(f);
    Jacobi r = a * b;
    r.weight = a.weight;
    r.index = a.index;
    r.level = a.level;
    return r;
  }

  // Inverse when the leading q-coefficient is a single zeta monomial.
  Jacobi inverse() const {
    if (rows_.empty()) throw std::domain_error("inverse of a series with no known terms");
    const auto& lead = rows_.begin()->second;
    if (lead.size() != 1) throw std::domain_error("inverse needs a monomial leading coefficient");
    if (!trunc_) throw std::domain_error("inverse needs a truncation order");
    long v = rows_.begin()->first;
    long z0 = lead.begin()->first;
    C c0inv = m24::inverse(lead.begin()->second);
    Rational ve = make_q(v, Dq_);
    Jacobi s(Dq_, Dz_, *trunc_ - 2 * ve);
    s.weight = -weight;
    s.index = -index;
    s.level = level;
    // u = q^-v zeta^-z0 this / c0; b u = 1
    std::map<long, Laurent<C>> b;
    for (long n = 0; make_q(n, Dq_) < *trunc_ - ve; ++n) {
      Laurent<C> acc;
      if (n == 0) acc.emplace(0, C(Rational(1)));
      for (const auto& [qk, row] : rows_) {
        long j = qk - v;
        if (j == 0) continue;
        if (j > n) break;
        auto it = b.find(n - j);
        if (it == b.end()) continue;
        for (const auto& [za, ca] : row)
          for (const auto& [zb, cb] : it->second) {
            C p = ca;
            p *= cb;
            p *= c0inv;
            long key = za - z0 + zb;
            auto [jt, ins] = acc.try_emplace(key, -p);
            if (!ins) {
              jt->second -= p;
              if (is_zero(jt->second)) acc.erase(jt);
            }
          }
      }
      if (!acc.empty()) b.emplace(n, std::move(acc));
    }
    for (const auto& [n, row] : b)
      for (const auto& [zk, c] : row) {
        C x = c;
        x *= c0inv;
        s.add(n - v, zk - z0, x);
      }
    return s;
  }

  Jacobi pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Jacobi r(1, 1);
    r.add(0, 0, C(Rational(1)));
    Jacobi b = *this;
    while (e > 0) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  // (tau, z) -> (a tau, b z).
  Jacobi substitute(long a, long b) const {
    Jacobi s(Dq_, Dz_, trunc_ ? Trunc(*trunc_ * a) : Trunc());
    s.copy_meta(*this);
    s.index = index * b * b / a;
    for (const auto& [qk, row] : rows_) {
      auto& out = s.rows_[qk * a];
      for (const auto& [zk, c] : row) out.emplace(zk * b, c);
    }
    return s;
  }

  Jacobi shifted(const Rational& e) const {
    long nq = lcm(Dq_, to_long(Integer(e.get_den())));
    Jacobi a = with_denoms(nq, Dz_);
    long sh = to_long(e * nq);
    Jacobi s(nq, Dz_, trunc_shift(trunc_, e));
    s.copy_meta(*this);
    for (const auto& [qk, row] : a.rows_) s.rows_.emplace(qk + sh, row);
    return s;
  }

  template <class F>
  auto map_coeffs(F f) const {
    using R = decltype(f(std::declval<C>()));
    Jacobi<R> s(Dq_, Dz_, trunc_);
    s.weight = weight;
    s.index = index;
    s.level = level;
    for (const auto& [qk, row] : rows_)
      for (const auto& [zk, c] : row) s.add(qk, zk, f(c));
    return s;
  }

  friend bool operator==(const Jacobi& a, const Jacobi& b) {
    if (a.trunc_ != b.trunc_) return false;
    long nq = lcm(a.Dq_, b.Dq_), nz = lcm(a.Dz_, b.Dz_);
    return a.with_denoms(nq, nz).rows_ == b.with_denoms(nq, nz).rows_;
  }

  bool agrees_with(const Jacobi& o) const {
    Trunc T = trunc_min(trunc_, o.trunc_);
    Jacobi a = T ? truncated(*T) : *this;
    Jacobi b = T ? o.truncated(*T) : o;
    long nq = lcm(a.Dq_, b.Dq_), nz = lcm(a.Dz_, b.Dz_);
    return a.with_denoms(nq, nz).rows_ == b.with_denoms(nq, nz).rows_;
  }

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [qk, row] : rows_) {
      if (!first) os << "\n";
      first = false;
      os << "q^" << make_q(qk, Dq_).get_str() << ":";
      for (const auto& [zk, c] : row) os << " [" << make_q(zk, Dz_).get_str() << "]=" << coeff_str(c);
    }
    if (trunc_) os << (first ? "" : "\n") << "O(q^" << trunc_->get_str() << ")";
    return os.str();
  }

  void copy_meta(const Jacobi& o) {
    weight = o.weight;
    index = o.index;
    level = o.level;
  }

 private:
  static Rational val_or(const Jacobi& s) {
    Trunc v = s.valuation();
    return v ? *v : Rational(0);
  }

  long Dq_ = 1, Dz_ = 1;
  Trunc trunc_;
  std::map<long, Laurent<C>> rows_;
};

using QJacobi = Jacobi<Rational>;
using CJacobi = Jacobi<Cyclotomic>;

}  // namespace m24
