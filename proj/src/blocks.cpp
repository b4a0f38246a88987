#include "m24/blocks.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>

namespace m24 {

namespace {

// Largest integer n >= 0 with start + n * step < T, or -1 if none.
long last_index(const Rational& start, const Rational& step, const Rational& T) {
  if (start >= T) return -1;
  Rational x = (T - start) / step;
  Integer f = floor(x);
  if (Rational(f) == x) f -= 1;
  return to_long(f);
}

template <class V>
V memo(std::map<std::string, V>& table, std::mutex& mu, const std::string& key, const std::function<V()>& make) {
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = table.find(key);
    if (it != table.end()) return it->second;
  }
  V v = make();
  std::lock_guard<std::mutex> lock(mu);
  table.emplace(key, v);
  return v;
}

// theta(tau, z) q^(-1/8) to q^T, qDenom 8, zDenom 2.
QJacobi theta_unit(const Rational& T) {
  QJacobi th(8, 2, T);
  th.add(0, 1, 1);
  th.add(0, -1, -1);
  long nmax = last_index(0, 1, T);
  for (long n = 1; n <= nmax; ++n) {
    QJacobi f(8, 2);
    f.add(0, 0, 1);
    f.add(8 * n, 0, -1);
    QJacobi g(8, 2);
    g.add(0, 0, 1);
    g.add(8 * n, 2, -1);
    QJacobi h(8, 2);
    h.add(0, 0, 1);
    h.add(8 * n, -2, -1);
    th = th * f * g * h;
  }
  return th;
}

}  // namespace

Rational EtaQuotient::weight() const {
  Rational w = 0;
  for (auto [k, b] : factors) w += make_q(b, 2);
  return w;
}

Rational EtaQuotient::leading_exponent() const {
  Rational e = 0;
  for (auto [k, b] : factors) e += make_q(k * b, 24);
  return e;
}

void EtaQuotient::canonicalize() {
  std::map<long, long> m;
  for (auto [k, b] : factors) {
    if (k <= 0) throw std::invalid_argument("eta quotient scale must be positive");
    m[k] += b;
  }
  factors.clear();
  for (auto [k, b] : m)
    if (b != 0) factors.emplace_back(k, b);
}

std::string EtaQuotient::str() const {
  std::ostringstream os;
  if (prefactor != 1) os << prefactor.get_str() << "*";
  bool first = true;
  for (auto [k, b] : factors) {
    if (!first) os << "*";
    first = false;
    os << "eta(" << (k == 1 ? std::string() : std::to_string(k)) << "tau)";
    if (b != 1) os << "^" << b;
  }
  if (first) os << "1";
  return os.str();
}

std::string TTildeAtom::str() const {
  std::ostringstream os;
  os << coeff.get_str() << "*";
  if (kind == Kind::Eta)
    os << eta.str();
  else
    os << "E2^(" << level << ")(" << (scale == 1 ? std::string() : std::to_string(scale)) << "tau)";
  return os.str();
}

int chi12(long n) {
  static const int table[12] = {0, 1, 0, 0, 0, -1, 0, -1, 0, 0, 0, 1};
  return table[mod(n, 12)];
}

int chi4(long n) {
  static const int table[4] = {0, 1, 0, -1};
  return table[mod(n, 4)];
}

std::vector<Integer> euler_power(long b, long nmax) {
  std::vector<Integer> p(nmax + 1);
  if (nmax < 0) return {};
  p[0] = 1;
  std::vector<long> sig(nmax + 1);
  for (long m = 1; m <= nmax; ++m) sig[m] = sigma1(m);
  // n p_n = -b sum_{m=1}^n sigma(m) p_{n-m}
  for (long n = 1; n <= nmax; ++n) {
    Integer acc = 0;
    for (long m = 1; m <= n; ++m) acc += sig[m] * p[n - m];
    acc *= -b;
    if (acc % n != 0) throw std::logic_error("euler_power: non-integral coefficient");
    p[n] = acc / n;
  }
  return p;
}

QSeries eta_power_series(long scale, long b, const Rational& T) {
  Rational lead = make_q(scale * b, 24);
  QSeries s(24, T);
  long nmax = last_index(lead, Rational(scale), T);
  if (nmax < 0) return s;
  auto p = euler_power(b, nmax);
  for (long n = 0; n <= nmax; ++n) s.add(scale * b + 24 * scale * n, Rational(p[n]));
  return s.normalized();
}

QSeries eta_series(long scale, const Rational& T) { return eta_power_series(scale, 1, T); }

QSeries eta_sum_series(const Rational& T) {
  QSeries s(24, T);
  for (long n = 1; make_q(n * n, 24) < T; ++n)
    if (chi12(n) != 0) s.add(n * n, Rational(chi12(n)));
  return s;
}

QSeries eta_quotient_series(const EtaQuotient& eq, const Rational& T) {
  Rational lead = eq.leading_exponent();
  Rational rel = T - lead;
  if (rel <= 0) return QSeries(1, T);
  QSeries s = QSeries::constant(eq.prefactor, rel);
  for (auto [k, b] : eq.factors) {
    QSeries f(1, rel);
    long nmax = last_index(0, Rational(k), rel);
    if (nmax >= 0) {
      auto p = euler_power(b, nmax);
      for (long n = 0; n <= nmax; ++n) f.add(k * n, Rational(p[n]));
    }
    s = s * f;
  }
  return s.shifted(lead).normalized();
}

QJacobi theta_series(const Rational& T) {
  QJacobi th = theta_unit(T - make_q(1, 8)).shifted(make_q(1, 8));
  th.weight = make_q(1, 2);
  th.index = make_q(1, 2);
  return th;
}

QJacobi theta_sum_series(const Rational& T) {
  QJacobi th(8, 2, T);
  for (long n = 1; make_q(n * n, 8) < T; ++n) {
    int c = chi4(n);
    if (c == 0) continue;
    th.add(n * n, n, c);
    th.add(n * n, -n, -c);
  }
  th.weight = make_q(1, 2);
  th.index = make_q(1, 2);
  return th;
}

QJacobi phi_m2_1(const Rational& T) {
  static std::mutex mu;
  static std::map<std::string, QJacobi> table;
  return memo<QJacobi>(table, mu, "phi-2," + T.get_str(), [&] {
    // theta^2 / eta^6 = (theta q^(-1/8))^2 * prod (1 - q^n)^(-6)
    QJacobi t = theta_unit(T);
    QSeries e(1, T);
    long nmax = last_index(0, 1, T);
    auto p = euler_power(-6, nmax);
    for (long n = 0; n <= nmax; ++n) e.add(n, Rational(p[n]));
    QJacobi r = (t * t) * e;
    r = r.normalized();
    r.weight = -2;
    r.index = 1;
    r.level = 1;
    return r;
  });
}

QJacobi phi_0_1(const Rational& T) {
  static std::mutex mu;
  static std::map<std::string, QJacobi> table;
  return memo<QJacobi>(table, mu, "phi0," + T.get_str(), [&] {
    // 4 sum_{i=2,3,4} (theta_i(tau,z) / theta_i(tau,0))^2 with q = e(tau).
    // theta_2 carries q^(1/8), which cancels in the quotient, so it is dropped.
    Rational TT = T;
    QJacobi th2(8, 2, TT), th3(2, 1, TT), th4(2, 1, TT);
    for (long n = -64; n <= 64; ++n) {
      // (n + 1/2)^2 / 2 - 1/8 = (n^2 + n) / 2
      if (make_q(n * n + n, 2) < TT) th2.add(4 * (n * n + n), 2 * n + 1, 1);
      if (make_q(n * n, 2) < TT) {
        th3.add(n * n, n, 1);
        th4.add(n * n, n, (n % 2 == 0) ? 1 : -1);
      }
    }
    if (make_q(64 * 65, 2) < TT) throw std::domain_error("phi_0_1: truncation too large");
    QJacobi acc(2, 1, TT);
    for (QJacobi* th : {&th2, &th3, &th4}) {
      QSeries at0(th->qdenom(), TT);
      for (const auto& [qk, row] : th->rows()) {
        Rational s = 0;
        for (const auto& kv : row) s += kv.second;
        at0.add(qk, s);
      }
      QJacobi ratio = *th * at0.inverse();
      acc += ratio * ratio;
    }
    QJacobi r = acc.scaled(Rational(4)).normalized();
    r.weight = 0;
    r.index = 1;
    r.level = 1;
    return r;
  });
}

QJacobi phi_weak_basis(int which, const Rational& T) {
  if (which == -2) return phi_m2_1(T);
  if (which == 0) return phi_0_1(T);
  throw std::invalid_argument("phi_weak_basis: which must be -2 or 0");
}

QSeries e2_series(const Rational& T) {
  QSeries s(1, T);
  s.add(0, 1);
  for (long n = 1; n < T; ++n) s.add(n, Rational(-24 * sigma1(n)));
  return s;
}

QSeries e2n_series(long N, long scale, const Rational& T) {
  if (N < 2) throw std::invalid_argument("E2^(N) needs N >= 2");
  QSeries a = e2_series(T / (N * scale) + 1).substitute(N * scale).truncated(T);
  QSeries b = e2_series(T / scale + 1).substitute(scale).truncated(T);
  QSeries r = a.scaled(Rational(N)) - b;
  return r.scaled(make_q(1, N - 1));
}

QSeries atom_series(const TTildeAtom& atom, const Rational& T) {
  if (atom.kind == TTildeAtom::Kind::E2N) return e2n_series(atom.level, atom.scale, T).scaled(atom.coeff);
  return eta_quotient_series(atom.eta, T).scaled(atom.coeff);
}

QSeries atoms_series(const std::vector<TTildeAtom>& atoms, const Rational& T) {
  QSeries s(1, T);
  for (const auto& a : atoms) s += atom_series(a, T);
  return s;
}

QJacobi theta_block(const std::map<long, std::map<long, Rational>>& mult, const Rational& T) {
  // Split into eta(d tau)^(e_d) and theta(d tau, d r z)^(m) with leading powers pulled out.
  Rational lead = 0;
  std::map<long, long> eta_exp;
  std::vector<std::tuple<long, long, long>> thetas;  // (d, r, m)
  for (const auto& [d, row] : mult) {
    for (const auto& [r, mq] : row) {
      if (!is_integer(mq)) throw std::domain_error("theta_block: non-integral exponent");
      long m = to_long(mq);
      if (m == 0) continue;
      if (r == 0) {
        eta_exp[d] += m;
      } else if (r > 0) {
        if (m < 0) throw std::domain_error("theta_block: negative theta exponent");
        eta_exp[d] -= m;
        thetas.emplace_back(d, r, m);
        lead += make_q(d * m, 8);
      }
    }
  }
  for (auto [d, e] : eta_exp) lead += make_q(d * e, 24);
  Rational rel = T - lead;
  QJacobi acc(1, 1, rel);
  acc.add(0, 0, 1);
  for (auto [d, e] : eta_exp) {
    if (e == 0) continue;
    QSeries f(1, rel);
    long nmax = last_index(0, Rational(d), rel);
    if (nmax >= 0) {
      auto p = euler_power(e, nmax);
      for (long n = 0; n <= nmax; ++n) f.add(d * n, Rational(p[n]));
    }
    acc = acc * f;
  }
  for (auto [d, r, m] : thetas) {
    QJacobi t = theta_unit(rel / d + 1).substitute(d, d * r).truncated(rel);
    acc = acc * t.pow(m);
  }
  QJacobi out = acc.shifted(lead).normalized();
  Rational w = 0;
  for (auto [d, e] : eta_exp) w += make_q(e, 2);
  for (auto [d, r, m] : thetas) w += make_q(m, 2);
  out.weight = w;
  Rational idx = 0;
  for (auto [d, r, m] : thetas) idx += make_q(d * r * r * m, 2);
  out.index = idx;
  return out;
}

}  // namespace m24
