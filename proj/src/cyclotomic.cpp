#include "m24/cyclotomic.hpp"

#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace m24 {

namespace {

std::vector<long> poly_mul(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Exact division by a monic polynomial.
std::vector<long> poly_div(std::vector<long> a, const std::vector<long>& b) {
  size_t db = b.size() - 1;
  std::vector<long> q(a.size() - db, 0);
  for (size_t i = a.size(); i-- > db;) {
    long c = a[i];
    q[i - db] = c;
    for (size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  for (long v : a)
    if (v != 0) throw std::logic_error("inexact polynomial division");
  return q;
}

// Powers y^j mod Phi_R for 0 <= j < R, each of length phi(R).
struct ReductionTable {
  long R = 1;
  long phi = 1;
  std::vector<std::vector<long>> rows;
};

const ReductionTable& reduction_table(long R) {
  static std::mutex mu;
  static std::map<long, std::unique_ptr<ReductionTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(R);
  if (it != cache.end()) return *it->second;
  auto t = std::make_unique<ReductionTable>();
  t->R = R;
  std::vector<long> phi_poly = cyclotomic_polynomial(R);
  long deg = static_cast<long>(phi_poly.size()) - 1;
  t->phi = deg;
  std::vector<long> cur(deg, 0);
  cur[0] = 1;
  if (deg == 0) cur = {1};
  for (long j = 0; j < R; ++j) {
    t->rows.push_back(cur);
    // cur <- y * cur mod Phi_R
    std::vector<long> nxt(deg, 0);
    long top = cur[deg - 1];
    for (long l = deg - 1; l > 0; --l) nxt[l] = cur[l - 1];
    nxt[0] = 0;
    for (long l = 0; l < deg; ++l) nxt[l] -= top * phi_poly[l];
    cur = nxt;
  }
  auto& ref = *t;
  cache.emplace(R, std::move(t));
  return ref;
}

// Reduces sum v_k x^k (k taken mod n) into canonical coordinates.
std::map<long, Rational> reduce_powers(long n, const std::map<long, Rational>& powers) {
  long R = radical(n);
  long s = n / R;
  const ReductionTable& tab = reduction_table(R);
  std::map<long, Rational> out;
  auto bump = [&](long key, const Rational& v) {
    auto [it, inserted] = out.try_emplace(key, v);
    if (!inserted) {
      it->second += v;
      if (sgn(it->second) == 0) out.erase(it);
    }
  };
  for (const auto& [k0, v] : powers) {
    if (sgn(v) == 0) continue;
    long k = mod(k0, n);
    long i = k % s, j = k / s;
    if (j < tab.phi) {
      bump(k, v);
    } else {
      const auto& row = tab.rows[j];
      for (long l = 0; l < tab.phi; ++l)
        if (row[l] != 0) bump(i + s * l, v * row[l]);
    }
  }
  return out;
}

}  // namespace

std::vector<long> cyclotomic_polynomial(long n) {
  // Phi_n = prod_{d | n} (x^d - 1)^{mu(n/d)}
  std::vector<long> num{1}, den{1};
  for (long d : divisors(n)) {
    int mu = mobius(n / d);
    if (mu == 0) continue;
    std::vector<long> f(d + 1, 0);
    f[0] = -1;
    f[d] = 1;
    if (mu > 0)
      num = poly_mul(num, f);
    else
      den = poly_mul(den, f);
  }
  return poly_div(num, den);
}

Cyclotomic::Cyclotomic(const Rational& r) {
  if (sgn(r) != 0) c_.emplace(0, r);
}

Cyclotomic Cyclotomic::root(long k, long n) {
  if (n <= 0) throw std::invalid_argument("root: n must be positive");
  long g = gcd(k, n);
  long nn = n / g, kk = mod(k / g, nn);
  return from_powers(nn, {{kk, Rational(1)}});
}

Cyclotomic Cyclotomic::from_powers(long n, const std::map<long, Rational>& powers) {
  Cyclotomic x;
  x.n_ = n;
  x.c_ = reduce_powers(n, powers);
  return x;
}

Cyclotomic Cyclotomic::sqrt_rational(const Rational& r) {
  if (sgn(r) <= 0) {
    if (sgn(r) == 0) return Cyclotomic();
    throw std::domain_error("sqrt_rational: negative input");
  }
  Integer m = r.get_num() * r.get_den();
  if (!m.fits_slong_p()) throw std::overflow_error("sqrt_rational: input too large");
  long u = 1;
  Cyclotomic acc(Rational(1));
  for (auto [p, e] : factorize(m.get_si())) {
    for (int i = 0; i < e / 2; ++i) u *= p;
    if (e % 2 == 0) continue;
    Cyclotomic sp;
    if (p == 2) {
      sp = root(1, 8) + root(7, 8);
    } else {
      std::map<long, Rational> g;
      for (long a = 1; a < p; ++a) g[a] = kronecker(a, p);
      sp = from_powers(p, g);
      if (p % 4 == 3) sp *= root(3, 4);
    }
    acc *= sp;
  }
  Rational scale(Integer(u), r.get_den());
  scale.canonicalize();
  return acc * scale;
}

std::vector<Rational> Cyclotomic::dense_coords() const {
  std::vector<Rational> v(totient(n_), Rational(0));
  for (const auto& [k, c] : c_) v[k] = c;
  return v;
}

bool Cyclotomic::is_rational() const { return c_.empty() || (c_.size() == 1 && c_.begin()->first == 0); }

Rational Cyclotomic::to_rational() const {
  if (!is_rational()) throw std::domain_error("cyclotomic element is not rational: " + str());
  return c_.empty() ? Rational(0) : c_.begin()->second;
}

Cyclotomic Cyclotomic::lift(long m) const {
  if (m == n_) return *this;
  if (m % n_ != 0) throw std::invalid_argument("lift: conductor must divide target");
  long f = m / n_;
  std::map<long, Rational> p;
  for (const auto& [k, v] : c_) p.emplace(k * f, v);
  return from_powers(m, p);
}

Cyclotomic Cyclotomic::galois(long u) const {
  if (gcd(u, n_) != 1) throw std::invalid_argument("galois: exponent not a unit");
  std::map<long, Rational> p;
  for (const auto& [k, v] : c_) p[mod(k * u, n_)] += v;
  return from_powers(n_, p);
}

Cyclotomic Cyclotomic::inverse() const {
  if (c_.empty()) throw std::domain_error("inverse of zero");
  if (c_.size() == 1) {
    const auto& [k, v] = *c_.begin();
    return from_powers(n_, {{mod(-k, n_), 1 / v}});
  }
  // Shrink the conductor through p^2 | n with all exponents divisible by p.
  Cyclotomic x = *this;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [p, e] : factorize(x.n_)) {
      if (e < 2) continue;
      bool all = true;
      for (const auto& kv : x.c_) all = all && (kv.first % p == 0);
      if (!all) continue;
      Cyclotomic y;
      y.n_ = x.n_ / p;
      for (const auto& [k, v] : x.c_) y.c_.emplace(k / p, v);
      x = y;
      changed = true;
      break;
    }
  }
  if (totient(x.n_) > 4096) throw std::domain_error("inverse: conductor too large for norm method");
  Cyclotomic others(Rational(1));
  for (long u : units_mod(x.n_))
    if (u != 1) others *= x.galois(u);
  Rational norm = (x * others).to_rational();
  return (others * (1 / norm)).lift(n_);
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  if (o.c_.empty()) return *this;
  if (c_.empty()) return *this = o;
  long m = lcm(n_, o.n_);
  if (m != n_) *this = lift(m);
  Cyclotomic lifted;
  const Cyclotomic* b = &o;
  if (o.n_ != m) {
    lifted = o.lift(m);
    b = &lifted;
  }
  for (const auto& [k, v] : b->c_) {
    auto [it, ins] = c_.try_emplace(k, v);
    if (!ins) {
      it->second += v;
      if (sgn(it->second) == 0) c_.erase(it);
    }
  }
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  if (c_.empty()) return *this;
  if (o.c_.empty()) return *this = Cyclotomic();
  if (o.is_rational()) return *this *= o.c_.begin()->second;
  if (is_rational()) {
    Rational r = c_.begin()->second;
    *this = o;
    return *this *= r;
  }
  long m = lcm(n_, o.n_);
  long fa = m / n_, fb = m / o.n_;
  std::map<long, Rational> p;
  for (const auto& [ka, va] : c_)
    for (const auto& [kb, vb] : o.c_) p[mod(ka * fa + kb * fb, m)] += va * vb;
  *this = from_powers(m, p);
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Rational& r) {
  if (sgn(r) == 0) {
    c_.clear();
    return *this;
  }
  for (auto& kv : c_) kv.second *= r;
  return *this;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic x = *this;
  for (auto& kv : x.c_) kv.second = -kv.second;
  return x;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.n_ == b.n_) return a.c_ == b.c_;
  long m = lcm(a.n_, b.n_);
  return a.lift(m).c_ == b.lift(m).c_;
}

std::string Cyclotomic::str() const {
  if (is_rational()) return to_rational().get_str();
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : c_) {
    if (!first) os << (sgn(v) < 0 ? " - " : " + ");
    else if (sgn(v) < 0) os << "-";
    first = false;
    Rational a = abs(v);
    if (k == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << "*";
    os << "E(" << n_ << ")";
    if (k != 1) os << "^" << k;
  }
  return os.str();
}

void RootSum::widen(long m) {
  long L = lcm(L_, m);
  if (L == L_) return;
  long f = L / L_;
  std::map<long, Rational> t;
  for (auto& [k, v] : t_) t.emplace(k * f, std::move(v));
  t_ = std::move(t);
  L_ = L;
}

void RootSum::add_root(const Rational& v, long num, long den) {
  if (sgn(v) == 0) return;
  widen(den);
  long key = mod(num * (L_ / den), L_);
  auto [it, ins] = t_.try_emplace(key, v);
  if (!ins) {
    it->second += v;
    if (sgn(it->second) == 0) t_.erase(it);
  }
}

void RootSum::add(const Cyclotomic& x, long num, long den) {
  if (x.is_zero()) return;
  widen(lcm(x.conductor(), den));
  long f = L_ / x.conductor();
  long shift = mod(num, den) * (L_ / den);
  for (const auto& [k, v] : x.coords()) {
    long key = mod(k * f + shift, L_);
    auto [it, ins] = t_.try_emplace(key, v);
    if (!ins) {
      it->second += v;
      if (sgn(it->second) == 0) t_.erase(it);
    }
  }
}

Cyclotomic RootSum::reduce() const { return Cyclotomic::from_powers(L_, t_); }

}  // namespace m24
