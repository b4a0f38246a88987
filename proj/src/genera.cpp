#include "m24/genera.hpp"

#include <sstream>
#include <stdexcept>

namespace m24 {

namespace {

using Poly = std::map<long, Rational>;  // zeta exponent -> coefficient

Poly row_poly(const std::array<long, 4>& row) {
  Poly p;
  for (int j = 0; j < 4; ++j) {
    long k = 3 - j;
    if (row[j] == 0) continue;
    p[k] += row[j];
    if (k != 0) p[-k] += row[j];
  }
  return p;
}

Poly jacobi_row(const QJacobi& phi, long n) {
  Poly p;
  for (long r = -8; r <= 8; ++r) {
    Rational c = phi.coeff(Rational(n), Rational(r));
    if (!is_zero(c)) p[r] = c;
  }
  return p;
}

void axpy(Poly& acc, const Rational& s, const Poly& x) {
  for (const auto& [k, v] : x) {
    acc[k] += s * v;
    if (is_zero(acc[k])) acc.erase(k);
  }
}

std::string poly_str(const Poly& p) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : p) {
    os << (first ? "" : " + ") << v.get_str() << "*z^" << k;
    first = false;
  }
  return first ? "0" : os.str();
}

}  // namespace

std::array<Rational, 4> symmetric_row(const QJacobi& phi, long n) {
  std::array<Rational, 4> out;
  for (int j = 0; j < 4; ++j) out[j] = phi.coeff(Rational(n), Rational(3 - j));
  return out;
}

std::vector<Rational> recover_ttilde_coeffs(long chi, const std::vector<std::array<long, 4>>& rows, long K) {
  if (K + 1 > static_cast<long>(rows.size())) throw std::invalid_argument("not enough rows to recover T~");
  Rational T = Rational(K + 1);
  QJacobi A = phi_0_1(T), B = phi_m2_1(T);
  std::vector<Rational> t;
  Rational c = make_q(chi, 12);
  for (long n = 0; n <= K; ++n) {
    Poly R = row_poly(rows[n]);
    axpy(R, -c, jacobi_row(A, n));
    for (long j = 0; j < n; ++j) axpy(R, -t[j], jacobi_row(B, n - j));
    // Divide by zeta - 2 + zeta^-1 = zeta^-1 (zeta - 1)^2 and require a constant quotient.
    Poly q;
    Poly rem = R;
    while (!rem.empty()) {
      auto top = std::prev(rem.end());
      long k = top->first;
      Rational lead = top->second;
      q[k - 1] += lead;
      axpy(rem, -lead, Poly{{k, 1}, {k - 1, -2}, {k - 2, 1}});
      if (!rem.empty() && std::prev(rem.end())->first < -64)
        throw std::domain_error("T~ recovery: inexact division at q^" + std::to_string(n) + ": " + poly_str(R));
    }
    for (auto it = q.begin(); it != q.end();)
      it = is_zero(it->second) ? q.erase(it) : std::next(it);
    if (q.size() > 1 || (q.size() == 1 && q.begin()->first != 0))
      throw std::domain_error("T~ recovery: quotient is not a constant at q^" + std::to_string(n) + ": " + poly_str(R));
    t.push_back(q.empty() ? Rational(0) : q.begin()->second);
  }
  return t;
}

QSeries ttilde_series(const ClassRecord& rec, const Rational& T, const PPTable* rows) {
  if (rec.has_ttilde) return atoms_series(rec.ttilde, T);
  if (!rows || rows->phi_rows.empty() || !rows->chi)
    throw std::domain_error("class " + rec.name + " has no T~ data and no listed rows");
  long K = static_cast<long>(rows->phi_rows.size()) - 1;
  auto t = recover_ttilde_coeffs(*rows->chi, rows->phi_rows, K);
  Rational TT = std::min(T, Rational(K + 1));
  QSeries s(1, TT);
  for (long n = 0; n <= K && n < TT; ++n) s.add(n, t[n]);
  return s;
}

QJacobi genus(const ClassRecord& rec, const Rational& T, const PPTable* rows) {
  QSeries tt = ttilde_series(rec, T, rows);
  Rational TT = tt.trunc() ? std::min(T, *tt.trunc()) : T;
  QJacobi g = phi_0_1(TT).scaled(make_q(rec.chi(), 12)) + phi_m2_1(TT) * tt;
  g = g.truncated(TT).normalized();
  g.weight = 0;
  g.index = 1;
  g.level = rec.level;
  return g;
}

GenusFamily genus_family(const DataSet& ds, const std::string& cls, const Rational& T) {
  GenusFamily f;
  f.cls = cls;
  const ClassRecord& rec = ds.classes.get(cls);
  f.level = rec.level;
  f.names = ds.classes.family(cls);
  for (const auto& [d, name] : f.names) {
    auto it = ds.appendix_a.find(name);
    f.members[d] = genus(ds.classes.get(name), T, it == ds.appendix_a.end() ? nullptr : &it->second);
  }
  return f;
}

std::vector<std::string> validate_against_appendixA(const ClassRecord& rec, const PPTable& table) {
  std::vector<std::string> errs;
  if (table.chi && *table.chi != rec.chi())
    errs.push_back(rec.name + ": chi " + std::to_string(rec.chi()) + " but table lists " + std::to_string(*table.chi));
  if (table.phi_rows.empty()) return errs;
  long K = static_cast<long>(table.phi_rows.size());
  QJacobi g = genus(rec, Rational(K), &table);
  for (long n = 0; n < K; ++n) {
    Poly want = row_poly(table.phi_rows[n]);
    Poly got = jacobi_row(g, n);
    for (long r = -8; r <= 8; ++r) {
      Rational w = want.count(r) ? want[r] : Rational(0);
      Rational a = got.count(r) ? got[r] : Rational(0);
      if (w != a) {
        std::ostringstream os;
        os << rec.name << ": q^" << n << " zeta^" << r << " expected " << w.get_str() << " got " << a.get_str();
        errs.push_back(os.str());
      }
    }
  }
  return errs;
}

std::vector<std::string> validate_dataset(const DataSet& ds) {
  std::vector<std::string> errs;
  for (const auto& rec : ds.classes.records()) {
    auto it = ds.appendix_a.find(rec.name);
    if (it == ds.appendix_a.end()) {
      errs.push_back(rec.name + ": missing from appendix_a.toml");
      continue;
    }
    for (auto& e : validate_against_appendixA(rec, it->second)) errs.push_back(e);
    auto fam = ds.classes.family(rec.name);
    for (const auto& [d, name] : it->second.family) {
      auto ft = fam.find(d);
      if (ft == fam.end()) errs.push_back(rec.name + ": family index " + std::to_string(d) + " does not divide the level");
      else if (ft->second != name)
        errs.push_back(rec.name + ": family member " + std::to_string(d) + " is " + ft->second + ", table says " + name);
    }
    if (!it->second.family.empty() || rec.level > 1) {
      for (const auto& [d, name] : fam)
        if (d > 1 && !it->second.family.count(d))
          errs.push_back(rec.name + ": table omits family member " + std::to_string(d));
    }
    if (fam.at(rec.level) != "1A") errs.push_back(rec.name + ": phi_{g^N} is not phi_1A");
  }
  for (const auto& [name, pp] : ds.appendix_b) {
    if (!pp.input_eta) {
      errs.push_back(name + ": appendix B entry without input form");
      continue;
    }
    long K = static_cast<long>(pp.input_rows.size()) + 1;
    QJacobi f = phi_m2_1(Rational(K)) * eta_quotient_series(*pp.input_eta, Rational(K));
    for (long n = 1; n < K; ++n) {
      Poly want = row_poly(pp.input_rows[n - 1]);
      Poly got = jacobi_row(f, n);
      if (want != got) errs.push_back(name + ": input form row q^" + std::to_string(n) + " is " + poly_str(got));
    }
    if (!jacobi_row(f, 0).empty()) errs.push_back(name + ": input form has a q^0 term");
  }
  return errs;
}

}  // namespace m24
