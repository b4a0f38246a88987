#include "m24/weil.hpp"

#include <algorithm>
#include <future>
#include <set>
#include <sstream>
#include <stdexcept>

namespace m24 {

Rational disc_Q(const DiscElement& e, long N, long t) {
  return frac(make_q(e.r * e.r, 4 * t) + make_q(e.x * e.y, N));
}

namespace {

std::string coord(long num, long den) {
  Rational q = make_q(num, den);
  return q.get_str();
}

}  // namespace

std::string disc_str(const DiscElement& e, long N, long t) {
  return "e(" + coord(e.x, N) + "," + coord(e.r, 2 * t) + "," + coord(e.y, N) + ")";
}

const QSeries& VVForm::at(const DiscElement& e) const {
  auto it = comps.find(e);
  if (it == comps.end()) throw std::out_of_range("no component " + disc_str(e, N, t));
  return it->second;
}

template <class C>
std::map<long, Series<C>> theta_decompose(const Jacobi<C>& phi0, long t) {
  Jacobi<C> phi = phi0.normalized();
  if (phi.zdenom() != 1) throw std::domain_error("theta_decompose: non-integral zeta exponent");
  if (!phi.trunc()) throw std::domain_error("theta_decompose: needs a truncation order");
  const Rational T = *phi.trunc();
  long D = lcm(phi.qdenom(), 4 * t);
  std::map<long, Series<C>> h;
  std::map<long, long> rep;  // residue -> representative of least |r|
  for (long r0 = 0; r0 < 2 * t; ++r0) {
    long r = r0 > t ? r0 - 2 * t : r0;
    rep[r0] = r;
    h.emplace(r0, Series<C>(D, T - make_q(r * r, 4 * t)));
  }
  std::set<std::pair<long, Rational>> done;
  for (const auto& [qk, row] : phi.rows()) {
    Rational n = make_q(qk, phi.qdenom());
    for (const auto& [r, c] : row) {
      long r0 = mod(r, 2 * t);
      Rational e = n - make_q(r * r, 4 * t);
      if (!done.insert({r0, e}).second) continue;
      // Every (n', r') with the same residue and discriminant must carry c.
      long base = rep[r0];
      for (long j = -1000;; ++j) {
        long rr = base + 2 * t * j;
        Rational nn = e + make_q(rr * rr, 4 * t);
        if (nn >= T) {
          if (j > 0) break;
          continue;
        }
        if (phi.coeff(nn, Rational(rr)) != c) {
          std::ostringstream os;
          os << "theta_decompose: c(" << nn.get_str() << "," << rr << ") differs from c(" << n.get_str() << "," << r
             << ")";
          throw std::domain_error(os.str());
        }
      }
      if (e < *h.at(r0).trunc()) h.at(r0).add_at(e, c);
    }
  }
  return h;
}

template std::map<long, QSeries> theta_decompose(const QJacobi&, long);
template std::map<long, CSeries> theta_decompose(const CJacobi&, long);

JFamily genus_jfamily(const ClassTable& classes, const std::string& cls) {
  const ClassRecord& rec = classes.get(cls);
  JFamily f;
  f.name = cls;
  f.N = rec.level;
  f.weight = 0;
  for (const auto& [d, name] : classes.family(cls)) {
    const ClassRecord& m = classes.get(name);
    if (!m.has_ttilde) throw std::domain_error("class " + name + " has no closed-form T~ (infinity-only mode)");
    f.members[d] = JInput{make_q(m.chi(), 12), m.ttilde, "phi_" + name};
  }
  return f;
}

JFamily eta_phi_jfamily(const ClassRecord& rec) {
  JFamily f;
  f.name = rec.name;
  f.N = rec.level;
  TTildeAtom at;
  at.kind = TTildeAtom::Kind::Eta;
  at.eta = rec.eta_product();
  at.coeff = 1;
  f.weight = at.eta.weight() - 2;
  f.members[1] = JInput{0, {at}, "eta_" + rec.name + " phi_{-2,1}"};
  return f;
}

JFamily appendix_b_jfamily(const DataSet& ds, const std::string& cls) {
  auto it = ds.appendix_b.find(cls);
  if (it == ds.appendix_b.end() || !it->second.input_eta) throw std::out_of_range("no appendix_b.toml input for " + cls);
  const ClassRecord& rec = ds.classes.get(cls);
  JFamily f;
  f.name = cls;
  f.N = rec.level;
  TTildeAtom at;
  at.kind = TTildeAtom::Kind::Eta;
  at.eta = *it->second.input_eta;
  at.coeff = at.eta.prefactor;
  at.eta.prefactor = 1;
  f.weight = at.eta.weight() - 2;
  f.members[1] = JInput{0, {at}, "f_" + cls};
  return f;
}

namespace {

CJacobi input_at_cusp(const JInput& in, const SL2& A, const Rational& T) {
  auto lift = [](const Rational& r) { return Cyclotomic(r); };
  CJacobi out(1, 1, T);
  if (!is_zero(in.c01)) out += phi_0_1(T).map_coeffs(lift).scaled(Cyclotomic(in.c01));
  if (!in.scalar.empty()) out += phi_m2_1(T).map_coeffs(lift) * atoms_at_cusp(in.scalar, A, T);
  return out.normalized();
}

struct ThetaParts {
  CSeries h0, h1;
};

std::vector<long> orbit_representatives(long N, bool batch) {
  std::vector<long> reps;
  if (!batch) {
    for (long b = 0; b < N; ++b) reps.push_back(b);
    return reps;
  }
  for (long d : divisors(N)) reps.push_back(mod(d, N));
  std::sort(reps.begin(), reps.end());
  return reps;
}

// Unit v' mod N with v' = b/g mod N/g, g = gcd(b, N).
long orbit_unit(long b, long N) {
  long g = gcd(b, N);
  if (b == 0) return 1;
  long v = b / g, step = N / g;
  for (long k = 0; k < N; ++k) {
    long u = mod(v + k * step, N);
    if (gcd(u, N) == 1) return u;
  }
  throw std::logic_error("orbit_unit: no unit lift");
}

}  // namespace

VVForm jmap(const JFamily& fam, const Rational& T, const JmapOptions& opt) {
  const long N = fam.N;
  const Rational Tj = T + make_q(1, 4);
  std::map<long, QSeries> H01, Hm2;
  if (opt.route == Route::Theta) {
    H01 = theta_decompose(phi_0_1(Tj));
    Hm2 = theta_decompose(phi_m2_1(Tj));
  }
  auto lift = [](const Rational& r) { return Cyclotomic(r); };

  auto one_b = [&](long b) {
    std::map<DiscElement, QSeries> out;
    std::vector<std::optional<ThetaParts>> h(N);
    for (long a = 0; a < N; ++a) {
      long d = gcd(gcd(a, b), N);
      if (N == 1) d = 1;
      auto it = fam.members.find(d);
      if (it == fam.members.end()) continue;
      SL2 A = choose_A_ab(a, b, N, opt.rule);
      if (opt.route == Route::Jacobi) {
        auto th = theta_decompose(input_at_cusp(it->second, A, Tj));
        h[a] = ThetaParts{th.at(0), th.at(1)};
      } else {
        const JInput& in = it->second;
        CSeries S = atoms_at_cusp(in.scalar, A, Tj);
        ThetaParts p{CSeries(1, Tj), CSeries(1, Tj)};
        p.h0 += H01.at(0).map_coeffs(lift).scaled(Cyclotomic(in.c01)) + Hm2.at(0).map_coeffs(lift) * S;
        p.h1 += H01.at(1).map_coeffs(lift).scaled(Cyclotomic(in.c01)) + Hm2.at(1).map_coeffs(lift) * S;
        h[a] = p;
      }
    }
    for (long r = 0; r < 2; ++r) {
      long D = 1;
      Trunc tr = T;
      for (const auto& p : h)
        if (p) {
          const CSeries& s = r == 0 ? p->h0 : p->h1;
          D = lcm(D, s.denom());
          tr = trunc_min(tr, s.trunc());
        }
      std::vector<const std::map<long, Cyclotomic>*> terms(N, nullptr);
      std::vector<CSeries> lifted(N);
      std::set<long> keys;
      for (long a = 0; a < N; ++a) {
        if (!h[a]) continue;
        lifted[a] = (r == 0 ? h[a]->h0 : h[a]->h1).with_denom(D);
        terms[a] = &lifted[a].terms();
        for (const auto& kv : *terms[a]) keys.insert(kv.first);
      }
      for (long c = 0; c < N; ++c) {
        QSeries comp(D, tr);
        for (long k : keys) {
          if (make_q(k, D) >= *tr) continue;
          RootSum acc(N);
          for (long i = 0; i < N; ++i) {
            long a = opt.reverse ? N - 1 - i : i;
            if (!terms[a]) continue;
            auto jt = terms[a]->find(k);
            if (jt == terms[a]->end()) continue;
            acc.add(jt->second, -a * c, N);
          }
          Cyclotomic v = acc.reduce();
          if (!v.is_rational()) {
            std::ostringstream os;
            os << "jmap: non-rational coefficient at " << disc_str({c, r, b}, N) << " q^" << make_q(k, D).get_str()
               << ": " << v.str();
            throw std::logic_error(os.str());
          }
          comp.add(k, v.to_rational() / N);
        }
        out.emplace(DiscElement{c, r, b}, comp.normalized());
      }
    }
    return out;
  };

  VVForm F;
  F.N = N;
  F.t = 1;
  F.weight = fam.weight - make_q(1, 2);
  auto reps = orbit_representatives(N, opt.batch);
  std::vector<std::future<std::map<DiscElement, QSeries>>> jobs;
  for (long b : reps) jobs.push_back(std::async(std::launch::async, one_b, b));
  for (auto& j : jobs) {
    auto part = j.get();
    F.comps.insert(part.begin(), part.end());
  }
  if (opt.batch) {
    std::set<long> have(reps.begin(), reps.end());
    for (long b = 0; b < N; ++b) {
      if (have.count(b)) continue;
      long g = mod(gcd(b, N), N);
      long u = orbit_unit(b, N);
      for (long r = 0; r < 2; ++r)
        for (long c = 0; c < N; ++c) F.comps.emplace(DiscElement{c, r, b}, F.at({mod(c * u, N), r, g}));
    }
  }
  return F;
}

PrincipalPart principal_part(const VVForm& F) {
  PrincipalPart pp;
  for (const auto& [e, s] : F.comps) {
    if (s.trunc() && *s.trunc() <= 0)
      throw std::domain_error("principal_part: component " + disc_str(e, F.N, F.t) + " not known through q^0");
    for (const auto& [k, c] : s.terms()) {
      Rational ex = s.exponent(k);
      if (ex < 0) pp[{e, ex}] = c;
    }
  }
  return pp;
}

Rational constant_term(const VVForm& F) { return F.at({0, 0, 0}).coeff(Rational(0)); }

bool symmetry_check(const VVForm& F) {
  for (const auto& [e, s] : F.comps) {
    for (long u : units_mod(F.N)) {
      DiscElement o{mod(e.x * u, F.N), e.r, mod(e.y * inverse_mod(u, F.N), F.N)};
      if (F.N == 1) o = e;
      auto it = F.comps.find(o);
      if (it == F.comps.end() || !it->second.agrees_with(s)) return false;
    }
  }
  return true;
}

VVForm jmap_theta_route(const ClassRecord& rec, const Rational& T) {
  JmapOptions opt;
  opt.route = Route::Theta;
  return jmap(eta_phi_jfamily(rec), T, opt);
}

PrincipalPart expand_table(const PPTable& table, long N) {
  PrincipalPart pp;
  for (const auto& term : table.terms) {
    auto emit = [&](long a, long ainv, long c) {
      Rational X = term.at[0].eval(a, ainv, c) * N;
      Rational Y = term.at[1].eval(a, ainv, c) * 2;
      Rational Z = term.at[2].eval(a, ainv, c) * N;
      if (!is_integer(X) || !is_integer(Y) || !is_integer(Z))
        throw DataError(table.source + " line " + std::to_string(term.line) + ": " + term.describe() +
                        " does not lie on level " + std::to_string(N));
      DiscElement e{mod(to_long(X), N), mod(to_long(Y), 2), mod(to_long(Z), N)};
      if (!is_integer(term.exponent + disc_Q(e, N)))
        throw DataError(table.source + " line " + std::to_string(term.line) + ": exponent " + term.exponent.get_str() +
                        " is not in Z - Q(" + disc_str(e, N) + ")");
      auto key = std::make_pair(e, term.exponent);
      pp[key] += term.coeff;
      if (is_zero(pp[key])) pp.erase(key);
    };
    long m = term.modulus;
    switch (term.sum) {
      case PPTerm::Sum::Single: emit(0, 0, 0); break;
      case PPTerm::Sum::Units:
        for (long a : units_mod(m)) emit(a, m == 1 ? 0 : inverse_mod(a, m), 0);
        break;
      case PPTerm::Sum::All:
        for (long a = 0; a < m; ++a) emit(a, 0, 0);
        break;
      case PPTerm::Sum::Pairs:
        for (long a = 0; a < m; ++a)
          for (long c = 0; c < m; ++c) {
            if (gcd(gcd(a, c), m) != 1) continue;
            long p = mod(a * c, m);
            if (std::find(term.products.begin(), term.products.end(), p) != term.products.end()) emit(a, 0, c);
          }
        break;
    }
  }
  return pp;
}

std::vector<std::string> compare_with_table(const PrincipalPart& pp, const Rational& constant, const PPTable& table,
                                            long N) {
  std::vector<std::string> errs;
  PrincipalPart want = expand_table(table, N);
  std::set<std::pair<DiscElement, Rational>> keys;
  for (const auto& kv : pp) keys.insert(kv.first);
  for (const auto& kv : want) keys.insert(kv.first);
  for (const auto& key : keys) {
    Rational w = want.count(key) ? want.at(key) : Rational(0);
    Rational g = pp.count(key) ? pp.at(key) : Rational(0);
    if (w != g) {
      std::ostringstream os;
      os << table.name << ": q^(" << key.second.get_str() << ") " << disc_str(key.first, N) << " expected "
         << w.get_str() << " computed " << g.get_str();
      errs.push_back(os.str());
    }
  }
  if (constant != table.constant)
    errs.push_back(table.name + ": constant term expected " + table.constant.get_str() + " computed " +
                   constant.get_str());
  return errs;
}

std::string format_pp(const PrincipalPart& pp, const Rational& constant, long N) {
  std::ostringstream os;
  os << constant.get_str() << " e(0,0,0)\n";
  std::set<std::pair<DiscElement, Rational>> used;
  std::vector<std::pair<std::pair<DiscElement, Rational>, Rational>> order(pp.begin(), pp.end());
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& x, const auto& y) { return x.first.second < y.first.second; });
  for (const auto& [key, c] : order) {
    if (used.count(key)) continue;
    const auto& [e, ex] = key;
    std::set<DiscElement> orbit;
    for (long u : units_mod(N)) {
      if (N == 1) {
        orbit.insert(e);
        break;
      }
      orbit.insert({mod(e.x * u, N), e.r, mod(e.y * inverse_mod(u, N), N)});
    }
    bool uniform = true;
    for (const auto& o : orbit) {
      auto it = pp.find({o, ex});
      if (it == pp.end() || it->second != c || used.count({o, ex})) uniform = false;
    }
    if (uniform && orbit.size() > 1) {
      for (const auto& o : orbit) used.insert({o, ex});
      os << c.get_str() << " sum over " << orbit.size() << " (Z/" << N << ")^x-images of q^(" << ex.get_str() << ") "
         << disc_str(e, N) << "\n";
    } else {
      used.insert(key);
      os << c.get_str() << " q^(" << ex.get_str() << ") " << disc_str(e, N) << "\n";
    }
  }
  return os.str();
}

}  // namespace m24
