#include "m24/borcherds.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "m24/blocks.hpp"
#include "m24/genera.hpp"

namespace m24 {

namespace {

void laurent_add(Laurent<Rational>& row, long r, const Rational& v) {
  if (sgn(v) == 0) return;
  auto [it, ins] = row.try_emplace(r, v);
  if (!ins) {
    it->second += v;
    if (sgn(it->second) == 0) row.erase(it);
  }
}

long q_valuation(const std::map<std::pair<long, long>, Laurent<Rational>>& rows) {
  long v = 0;
  bool first = true;
  for (const auto& [nm, row] : rows) {
    if (first || nm.first < v) v = nm.first;
    first = false;
  }
  return v;
}

long s_valuation(const std::map<std::pair<long, long>, Laurent<Rational>>& rows) {
  long v = 0;
  bool first = true;
  for (const auto& [nm, row] : rows) {
    if (first || nm.second < v) v = nm.second;
    first = false;
  }
  return v;
}

// Generalized binomial coefficient binom(e, k) for integral e.
Rational binom(long e, long k) {
  Rational b = 1;
  for (long i = 0; i < k; ++i) b = b * Rational(e - i) / Rational(i + 1);
  return b;
}

QJacobi integral_exponents(const QJacobi& f, const char* what) {
  QJacobi g = f.normalized();
  if (g.qdenom() != 1 || g.zdenom() != 1) throw std::domain_error(std::string(what) + ": non-integral exponents");
  if (g.qdenom() != f.qdenom() || g.zdenom() != f.zdenom()) return g.with_denoms(1, 1);
  return g;
}

long to_integral(const Rational& x, const char* what) {
  if (!is_integer(x)) throw std::domain_error(std::string(what) + " is not integral: " + x.get_str());
  return to_long(Integer(x.get_num()));
}

}  // namespace

// ---------------------------------------------------------------------------
// SiegelSeries

void SiegelSeries::add(long n, long r, long m, const Rational& v) {
  if (!in_box(n, m) || sgn(v) == 0) return;
  auto key = std::make_pair(n, m);
  laurent_add(rows_[key], r, v);
  if (rows_[key].empty()) rows_.erase(key);
}

Rational SiegelSeries::coeff(long n, long r, long m) const {
  if (!in_box(n, m)) throw std::out_of_range("coefficient outside the known box");
  auto it = rows_.find({n, m});
  if (it == rows_.end()) return 0;
  auto jt = it->second.find(r);
  return jt == it->second.end() ? Rational(0) : jt->second;
}

SiegelSeries SiegelSeries::truncated(long qmax, long smax) const {
  SiegelSeries s(std::min(qmax, qmax_), std::min(smax, smax_));
  for (const auto& [nm, row] : rows_)
    if (s.in_box(nm.first, nm.second)) s.rows_.emplace(nm, row);
  return s;
}

SiegelSeries SiegelSeries::scaled(const Rational& c) const {
  SiegelSeries s(qmax_, smax_);
  if (sgn(c) == 0) return s;
  for (const auto& [nm, row] : rows_) {
    auto& out = s.rows_[nm];
    for (const auto& [r, v] : row) out.emplace(r, v * c);
  }
  return s;
}

SiegelSeries SiegelSeries::shifted(long n, long r, long m) const {
  SiegelSeries s(qmax_ + n, smax_ + m);
  for (const auto& [nm, row] : rows_) {
    auto& out = s.rows_[{nm.first + n, nm.second + m}];
    for (const auto& [k, v] : row) out.emplace(k + r, v);
  }
  return s;
}

SiegelSeries& SiegelSeries::operator+=(const SiegelSeries& o) {
  SiegelSeries s(std::min(qmax_, o.qmax_), std::min(smax_, o.smax_));
  for (const SiegelSeries* src : {static_cast<const SiegelSeries*>(this), &o})
    for (const auto& [nm, row] : src->rows_)
      for (const auto& [r, v] : row) s.add(nm.first, r, nm.second, v);
  return *this = s;
}

SiegelSeries operator*(const SiegelSeries& a, const SiegelSeries& b) {
  if (q_valuation(a.rows_) < 0 || s_valuation(a.rows_) < 0 || q_valuation(b.rows_) < 0 || s_valuation(b.rows_) < 0)
    throw std::domain_error("SiegelSeries product needs nonnegative q and s exponents");
  long Q = std::min(a.qmax_ + q_valuation(b.rows_), b.qmax_ + q_valuation(a.rows_));
  long S = std::min(a.smax_ + s_valuation(b.rows_), b.smax_ + s_valuation(a.rows_));
  SiegelSeries s(Q, S);
  for (const auto& [ka, ra] : a.rows_) {
    for (const auto& [kb, rb] : b.rows_) {
      long n = ka.first + kb.first, m = ka.second + kb.second;
      if (!s.in_box(n, m)) continue;
      auto& out = s.rows_[{n, m}];
      for (const auto& [za, ca] : ra)
        for (const auto& [zb, cb] : rb) laurent_add(out, za + zb, ca * cb);
      if (out.empty()) s.rows_.erase({n, m});
    }
  }
  return s;
}

bool operator==(const SiegelSeries& a, const SiegelSeries& b) {
  return a.qmax_ == b.qmax_ && a.smax_ == b.smax_ && a.rows_ == b.rows_;
}

SiegelSeries SiegelSeries::exp() const {
  for (const auto& [nm, row] : rows_) {
    if (nm.first < 0 || nm.second < 0) throw std::domain_error("exp needs nonnegative q and s exponents");
    if (nm.first == 0 && nm.second == 0) throw std::domain_error("exp needs a series without constant row");
  }
  // D Y = (D L) Y for the derivation D = n + m.
  SiegelSeries y(qmax_, smax_);
  y.rows_[{0, 0}][0] = 1;
  for (long g = 1; g <= qmax_ + smax_; ++g) {
    for (long n = std::max(0L, g - smax_); n <= std::min(g, qmax_); ++n) {
      long m = g - n;
      Laurent<Rational> acc;
      for (const auto& [nm, row] : rows_) {
        long n2 = n - nm.first, m2 = m - nm.second;
        if (n2 < 0 || m2 < 0) continue;
        auto it = y.rows_.find({n2, m2});
        if (it == y.rows_.end()) continue;
        Rational w(nm.first + nm.second);
        for (const auto& [za, ca] : row)
          for (const auto& [zb, cb] : it->second) laurent_add(acc, za + zb, w * ca * cb);
      }
      if (acc.empty()) continue;
      Rational inv = make_q(1, g);
      for (auto& kv : acc) kv.second *= inv;
      y.rows_[{n, m}] = std::move(acc);
    }
  }
  return y;
}

QJacobi SiegelSeries::fj(long m) const {
  if (m > smax_) throw std::out_of_range("Fourier-Jacobi index outside the known box");
  QJacobi f(1, 1, Rational(qmax_ + 1));
  for (const auto& [nm, row] : rows_)
    if (nm.second == m)
      for (const auto& [r, v] : row) f.add(nm.first, r, v);
  return f;
}

SiegelSeries SiegelSeries::from_fj(const std::map<long, QJacobi>& coeffs, long qmax, long smax) {
  SiegelSeries s(qmax, smax);
  for (const auto& [m, f] : coeffs) {
    if (m > smax) continue;
    if (f.trunc() && *f.trunc() <= qmax) throw std::domain_error("from_fj: coefficient known only below q^" + f.trunc()->get_str());
    QJacobi g = integral_exponents(f, "from_fj");
    for (const auto& [n, row] : g.rows())
      for (const auto& [r, v] : row) s.add(n, r, m, v);
  }
  return s;
}

std::string SiegelSeries::str() const {
  std::ostringstream os;
  for (const auto& [nm, row] : rows_) {
    os << "q^" << nm.first << " s^" << nm.second << ":";
    for (const auto& [r, v] : row) os << " [" << r << "]=" << v.get_str();
    os << "\n";
  }
  os << "known for n <= " << qmax_ << ", m <= " << smax_;
  return os.str();
}

// ---------------------------------------------------------------------------
// Hecke operators

DirichletChar eta_character(const ClassRecord& rec) {
  long w2 = 0;
  Integer prod = 1;
  for (auto [k, b] : rec.shape) {
    w2 += b;
    Integer p;
    mpz_pow_ui(p.get_mpz_t(), Integer(k).get_mpz_t(), static_cast<unsigned long>(b));
    prod *= p;
  }
  if (w2 % 2) throw std::domain_error("eta_character: half-integral weight");
  long w = w2 / 2;
  if (w % 2 == 0) return {1};
  prod = -prod;
  return {to_long(prod)};
}

QJacobi hecke_Tm(const QJacobi& phi0, long m, long D, long k, const DirichletChar& chi, long qmax) {
  if (m < 1) throw std::invalid_argument("hecke_Tm needs m >= 1");
  QJacobi phi = integral_exponents(phi0, "hecke_Tm");
  if (phi.trunc() && *phi.trunc() <= Rational(qmax * m))
    throw std::domain_error("hecke_Tm: input known below q^" + phi.trunc()->get_str() + ", need q^" +
                            std::to_string(qmax * m));
  QJacobi out(1, 1, Rational(qmax + 1));
  out.weight = phi0.weight;
  out.index = phi0.index * m;
  out.level = phi0.level;
  long nmin = phi.rows().empty() ? 0 : std::min(0L, phi.rows().begin()->first);
  for (long n = nmin; n <= qmax; ++n) {
    for (long a : divisors(gcd(n, m) == 0 ? m : gcd(n, m))) {
      if (gcd(a, D) != 1) continue;
      int ch = chi(a);
      if (ch == 0) continue;
      if ((n * m) % (a * a) != 0) continue;
      auto it = phi.rows().find(n * m / (a * a));
      if (it == phi.rows().end()) continue;
      Rational w = pow_rational(a, k - 1) * Rational(ch);
      for (const auto& [j, c] : it->second) out.add(n, a * j, w * c);
    }
  }
  return out;
}

QJacobi hecke_T0(const QJacobi& phi0, long D, long k, const DirichletChar& chi, long qmax) {
  (void)D;
  (void)k;
  (void)chi;
  QJacobi phi = integral_exponents(phi0, "hecke_T0");
  auto it = phi.rows().find(0);
  if (it != phi.rows().end() && !it->second.empty())
    throw std::domain_error("hecke_T0: nonzero c(0, r) needs the constant term, which is not implemented");
  QJacobi out(1, 1, Rational(qmax + 1));
  out.weight = phi0.weight;
  out.index = 0;
  out.level = phi0.level;
  return out;
}

// ---------------------------------------------------------------------------
// Inputs

Rational LiftInput::c(long d, long n, long r) const {
  auto it = phi.find(d);
  if (it == phi.end()) return 0;
  return it->second.coeff(Rational(n), Rational(r));
}

LiftInput genus_lift_input(const ClassTable& classes, const std::string& cls, long qorder) {
  const ClassRecord& rec = classes.get(cls);
  LiftInput in;
  in.name = cls;
  in.N = rec.level;
  in.weight = 0;
  for (const auto& [d, name] : classes.family(cls))
    in.phi[d] = integral_exponents(genus(classes.get(name), Rational(qorder + 1)), "genus");
  return in;
}

QJacobi eta_phi(const ClassRecord& rec, long qorder) {
  Rational T(qorder + 1);
  QJacobi f = phi_m2_1(T) * eta_quotient_series(rec.eta_product(), T);
  f = integral_exponents(f.truncated(T), "eta_phi");
  f.weight = rec.weight();
  f.index = 1;
  f.level = rec.level;
  return f;
}

QJacobi correction_input(const DataSet& ds, const std::string& cls, long qorder) {
  Rational T(qorder + 1);
  auto it = ds.appendix_b.find(cls);
  if (it == ds.appendix_b.end() || !it->second.input_eta) {
    QJacobi z(1, 1, T);
    z.index = 1;
    return z;
  }
  QJacobi f = phi_m2_1(T) * eta_quotient_series(*it->second.input_eta, T);
  f = integral_exponents(f.truncated(T), "correction_input");
  f.weight = 0;
  f.index = 1;
  f.level = ds.classes.get(cls).level;
  return f;
}

// ---------------------------------------------------------------------------
// Multiplicities and Weyl vector

Rational mult(const LiftInput& in, long n, long r, long m) {
  long g = gcd(gcd(gcd(n, r), m), in.N);
  if (g == 0) g = in.N;
  Rational acc = 0;
  for (long e : divisors(g)) {
    for (long d : divisors(e)) {
      if (in.N % d) continue;
      int mu = mobius(e / d);
      if (mu == 0) continue;
      Rational c = in.c(d, n * m / (e * e), r / e);
      if (sgn(c) == 0) continue;
      acc += Rational(mu) * c / Rational(e);
    }
  }
  return acc;
}

Rational mult_d(const LiftInput& in, long d, long n, long r) {
  Rational acc = 0;
  for (long t : divisors(d)) {
    int mu = mobius(d / t);
    if (mu == 0) continue;
    acc += Rational(mu) * in.c(t, n, r);
  }
  return acc / Rational(d);
}

WeylVector weyl_vector(const LiftInput& in) {
  WeylVector w{0, 0, 0};
  auto it = in.phi.find(in.N);
  if (it == in.phi.end()) return w;
  QJacobi f = integral_exponents(it->second, "weyl_vector");
  auto row = f.rows().find(0);
  if (row == f.rows().end()) return w;
  for (const auto& [r, c] : row->second) {
    w.A += c;
    if (r > 0) w.B += c * Rational(r);
    w.C += c * Rational(r * r);
  }
  w.A /= 24;
  w.B /= 2;
  w.C /= 4;
  return w;
}

Rational product_weight(const LiftInput& in) {
  Rational acc = 0;
  for (long d : divisors(in.N)) acc += mult_d(in, d, 0, 0);
  return acc / 2;
}

// ---------------------------------------------------------------------------
// Borcherds products

ProductMode parse_mode(const std::string& s) {
  if (s == "product") return ProductMode::Product;
  if (s == "fj") return ProductMode::FJ;
  if (s == "exp") return ProductMode::Exp;
  throw std::invalid_argument("unknown mode: " + s + " (expected product, fj or exp)");
}

std::string mode_name(ProductMode m) {
  switch (m) {
    case ProductMode::Product:
      return "product";
    case ProductMode::FJ:
      return "fj";
    case ProductMode::Exp:
      return "exp";
  }
  return "?";
}

namespace {

// Candidate r with mult(n, r, m) possibly nonzero: r = e j for e | gcd(n, m, N) and j in a support row.
std::set<long> mult_support(const LiftInput& in, long n, long m) {
  std::set<long> rs;
  long g = gcd(gcd(n, m), in.N);
  if (g == 0) g = in.N;
  for (long e : divisors(g)) {
    long k = n * m / (e * e);
    for (const auto& [d, f] : in.phi) {
      if (e % d) continue;
      auto it = f.rows().find(k);
      if (it == f.rows().end()) continue;
      for (const auto& kv : it->second) rs.insert(e * kv.first);
    }
  }
  return rs;
}

// (1 - q^n zeta^r s^m)^e on the box.
SiegelSeries factor_power(long n, long r, long m, long e, long Q, long S) {
  SiegelSeries f(Q, S);
  if (n == 0 && m == 0 && e < 0) throw std::domain_error("pure zeta factor with negative multiplicity");
  for (long k = 0;; ++k) {
    if (k > 0 && n == 0 && m == 0 && k > e) break;
    if (k * n > Q || k * m > S) break;
    Rational b = binom(e, k);
    if (sgn(b) == 0) break;
    f.add(k * n, k * r, k * m, (k % 2 ? -b : b));
  }
  return f;
}

struct Shift {
  long A, B, C;
};

Shift integral_weyl(const WeylVector& w) {
  return {to_integral(w.A, "Weyl vector A"), to_integral(w.B, "Weyl vector B"), to_integral(w.C, "Weyl vector C")};
}

SiegelSeries product_mode(const LiftInput& in, long Q, long S) {
  SiegelSeries P(Q, S);
  P.add(0, 0, 0, 1);
  // n = m = 0, r < 0
  long rmax = 0;
  for (const auto& [d, f] : in.phi) {
    auto it = f.rows().find(0);
    if (it == f.rows().end()) continue;
    for (const auto& kv : it->second) rmax = std::max(rmax, std::labs(kv.first) * in.N);
  }
  for (long r = -1; r >= -rmax; --r) {
    long e = to_integral(mult(in, 0, r, 0), "multiplicity");
    if (e) P = P * factor_power(0, r, 0, e, Q, S);
  }
  for (long n = 0; n <= Q; ++n) {
    for (long m = 0; m <= S; ++m) {
      if (n == 0 && m == 0) continue;
      for (long r : mult_support(in, n, m)) {
        long e = to_integral(mult(in, n, r, m), "multiplicity");
        if (e) P = P * factor_power(n, r, m, e, Q, S);
      }
    }
  }
  return P;
}

SiegelSeries exp_mode(const LiftInput& in, long Q, long S) {
  // Pure zeta part exp(-sum_{r<0} sum_a c_a(0, r) zeta^(r a) / a) as a series in w = zeta^-1.
  const long K = 64;
  QSeries L0(1, Rational(K));
  for (long a = 1; a < K; ++a) {
    const auto it = in.phi.find(gcd(a, in.N));
    if (it == in.phi.end()) continue;
    auto row = it->second.rows().find(0);
    if (row == it->second.rows().end()) continue;
    for (const auto& [r, c] : row->second)
      if (r < 0) L0.add(-r * a, -c / Rational(a));
  }
  QSeries P0 = L0.exp();
  for (const auto& [k, c] : P0.terms())
    if (2 * k >= K) throw std::domain_error("exp mode: pure zeta factor is not a polynomial of degree < 32");
  SiegelSeries Z(Q, S);
  for (const auto& [k, c] : P0.terms()) Z.add(0, -k, 0, c);

  SiegelSeries L(Q, S);
  for (long a = 1; a <= std::max(Q, S); ++a) {
    const auto it = in.phi.find(gcd(a, in.N));
    if (it == in.phi.end()) continue;
    Rational inv = make_q(1, a);
    for (long n = 0; n * a <= Q; ++n) {
      for (long m = 0; m * a <= S; ++m) {
        if (n == 0 && m == 0) continue;
        auto row = it->second.rows().find(n * m);
        if (row == it->second.rows().end()) continue;
        for (const auto& [r, c] : row->second) L.add(n * a, r * a, m * a, -c * inv);
      }
    }
  }
  return Z * L.exp();
}

SiegelSeries fj_mode(const LiftInput& in, long qmax, long A, long Srel) {
  std::map<long, std::map<long, Rational>> md;
  for (long d : divisors(in.N)) {
    auto it = in.phi.find(d);
    std::set<long> rs{0};
    for (const auto& [t, f] : in.phi) {
      if (d % t) continue;
      auto row = f.rows().find(0);
      if (row == f.rows().end()) continue;
      for (const auto& kv : row->second)
        if (kv.first > 0) rs.insert(kv.first);
    }
    (void)it;
    for (long r : rs) {
      Rational v = mult_d(in, d, 0, r);
      if (sgn(v)) md[d][r] = v;
    }
  }
  QJacobi theta = integral_exponents(theta_block(md, Rational(qmax + 1)), "theta block");
  SiegelSeries T(qmax, Srel);
  for (const auto& [n, row] : theta.rows())
    for (const auto& [r, v] : row) T.add(n, r, 0, v);
  long Qrel = qmax - A;
  SiegelSeries E(Qrel, Srel);
  for (const auto& [d, f] : in.phi) {
    for (long m = 1; d * m <= Srel; ++m) {
      QJacobi h = hecke_Tm(f, m, in.N / d, in.weight, DirichletChar{1}, Qrel / d).substitute(d, d);
      Rational w = -make_q(1, d);
      for (const auto& [n, row] : h.rows())
        for (const auto& [r, v] : row) E.add(n, r, d * m, w * v);
    }
  }
  return T * E.exp();
}

}  // namespace

FJExpansion borcherds_product(const LiftInput& in, ProductMode mode, long qmax, long smax) {
  if (in.weight != 0) throw std::invalid_argument("borcherds_product needs weight-0 inputs");
  FJExpansion out;
  out.name = in.name;
  out.N = in.N;
  out.weyl = weyl_vector(in);
  out.weight = product_weight(in);
  Shift sh = integral_weyl(out.weyl);
  if (sh.A < 0 || sh.C < 0) throw std::domain_error("borcherds_product: negative Weyl vector component");
  long Q = qmax - sh.A, S = smax - sh.C;
  if (Q < 0 || S < 0) {
    out.series = SiegelSeries(qmax, smax);
    return out;
  }
  switch (mode) {
    case ProductMode::Product:
      out.series = product_mode(in, Q, S).shifted(sh.A, sh.B, sh.C);
      break;
    case ProductMode::Exp:
      out.series = exp_mode(in, Q, S).shifted(sh.A, sh.B, sh.C);
      break;
    case ProductMode::FJ:
      out.series = fj_mode(in, qmax, sh.A, S).shifted(0, 0, sh.C);
      break;
  }
  out.series = out.series.truncated(qmax, smax);
  return out;
}

FJExpansion gritsenko_lift(const QJacobi& phi, long N, long k, const DirichletChar& chi, long qmax, long smax,
                           const std::string& name) {
  if (k < 1) throw std::invalid_argument("gritsenko_lift needs weight >= 1");
  FJExpansion out;
  out.name = name;
  out.N = N;
  out.weight = k;
  std::map<long, QJacobi> coeffs;
  coeffs[0] = hecke_T0(phi, N, k, chi, qmax);
  for (long m = 1; m <= smax; ++m) coeffs[m] = hecke_Tm(phi, m, N, k, chi, qmax);
  out.series = SiegelSeries::from_fj(coeffs, qmax, smax);
  return out;
}

FJExpansion weight_zero_exp_lift(const QJacobi& f, long N, long qmax, long smax) {
  FJExpansion out;
  out.N = N;
  out.weight = 0;
  SiegelSeries E(qmax, smax);
  for (long m = 1; m <= smax; ++m) {
    QJacobi h = hecke_Tm(f, m, N, 0, DirichletChar{1}, qmax);
    for (const auto& [n, row] : h.rows())
      for (const auto& [r, v] : row) E.add(n, r, m, -v);
  }
  out.series = E.exp();
  return out;
}

std::map<std::pair<long, long>, Rational> quasi_pullback(const FJExpansion& psi) {
  std::map<std::pair<long, long>, Rational> out;
  for (const auto& [nm, row] : psi.series.rows()) {
    Rational s0 = 0, s1 = 0, s2 = 0;
    for (const auto& [r, c] : row) {
      s0 += c;
      s1 += c * Rational(r);
      s2 += c * Rational(r * r);
    }
    if (sgn(s0) || sgn(s1))
      throw std::domain_error("quasi_pullback: no double zero at z = 0 in the coefficient of q^" +
                              std::to_string(nm.first) + " s^" + std::to_string(nm.second));
    if (sgn(s2)) out[nm] = s2 / 2;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Divisors and duality

std::vector<HumbertEntry> divisors(const PrincipalPart& pp, long N, const Rational& delta_max) {
  std::map<DiscElement, std::vector<std::pair<Rational, Rational>>> by_comp;  // exponent, coefficient
  Rational emin = 0;
  for (const auto& [key, c] : pp) {
    by_comp[key.first].emplace_back(key.second, c);
    emin = std::min(emin, key.second);
  }
  if (by_comp.empty()) return {};
  // delta >= 1/(4N) for any admissible data, so lambda^2 <= 4N |emin|.
  long lmax = 1;
  while (Rational((lmax + 1) * (lmax + 1)) <= Rational(4 * N) * (-emin)) ++lmax;
  auto scale = [&](const DiscElement& g, long l) {
    return DiscElement{mod(l * g.x, N), mod(l * g.r, 2), mod(l * g.y, N)};
  };
  auto alpha = [&](const DiscElement& g, const Rational& e) {
    auto it = by_comp.find(g);
    if (it == by_comp.end()) return Rational(0);
    for (const auto& [ex, c] : it->second)
      if (ex == e) return c;
    return Rational(0);
  };
  std::set<std::pair<DiscElement, Rational>> cands;
  for (long x = 0; x < N; ++x)
    for (long r = 0; r < 2; ++r)
      for (long y = 0; y < N; ++y) {
        DiscElement g{x, r, y};
        Rational q = disc_Q(g, N);
        for (long l = 1; l <= lmax; ++l) {
          auto it = by_comp.find(scale(g, l));
          if (it == by_comp.end()) continue;
          for (const auto& [e, c] : it->second) {
            Rational delta = -e / Rational(l * l);
            if (delta > delta_max || !is_integer(delta - q)) continue;
            cands.emplace(g, delta);
          }
        }
      }
  std::vector<long> units = units_mod(N);
  std::map<std::pair<DiscElement, Rational>, HumbertEntry> grouped;
  for (const auto& [g, delta] : cands) {
    Rational m = 0;
    for (long l = 1; l <= lmax; ++l) m += alpha(scale(g, l), -delta * Rational(l * l));
    if (sgn(m) == 0) continue;
    DiscElement rep = g;
    for (long u : units) {
      long ui = inverse_mod(u, N);
      for (long s : {1L, -1L}) {
        DiscElement h{mod(s * u * g.x, N), mod(s * g.r, 2), mod(s * ui * g.y, N)};
        rep = std::min(rep, h);
      }
    }
    auto key = std::make_pair(rep, delta);
    auto it = grouped.find(key);
    if (it != grouped.end()) {
      if (it->second.multiplicity != m) throw std::logic_error("divisors: multiplicity differs within an orbit");
      ++it->second.count;
      continue;
    }
    HumbertEntry h;
    h.a = rep.x;
    h.r = rep.r;
    h.b = rep.y;
    h.n = 1;
    Rational mm = make_q(rep.x * rep.y, N) + make_q(rep.r * rep.r, 4) - delta;
    h.m = to_integral(mm, "Humbert m");
    h.delta = delta;
    h.multiplicity = m;
    grouped.emplace(key, h);
  }
  std::vector<HumbertEntry> out;
  for (auto& kv : grouped) out.push_back(kv.second);
  std::sort(out.begin(), out.end(), [](const HumbertEntry& a, const HumbertEntry& b) {
    if (a.delta != b.delta) return a.delta < b.delta;
    return std::tie(a.a, a.r, a.b) < std::tie(b.a, b.r, b.b);
  });
  return out;
}

Rational duality_D0(const LiftInput& in) {
  Rational acc = 0;
  for (const auto& [d, f] : in.phi) {
    if (in.N % d) continue;
    QJacobi g = integral_exponents(f, "duality_D0");
    if (g.rows().empty()) continue;
    long v = g.rows().begin()->first;
    for (long l = 1; -l * l >= v; ++l) acc += Rational(totient(in.N / d)) * in.c(d, -l * l, 0);
  }
  return acc / Rational(in.N);
}

}  // namespace m24
