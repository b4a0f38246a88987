#include "m24/cusp.hpp"

#include <sstream>
#include <stdexcept>

namespace m24 {

std::string SL2::str() const {
  std::ostringstream os;
  os << "(" << a << " " << b << "; " << c << " " << d << ")";
  return os.str();
}

SL2 parse_sl2(const std::string& text) {
  SL2 m;
  char c1 = 0, c2 = 0, c3 = 0;
  std::istringstream is(text);
  if (!(is >> m.a >> c1 >> m.b >> c2 >> m.c >> c3 >> m.d) || c1 != ',' || c2 != ',' || c3 != ',')
    throw std::invalid_argument("matrix must be given as a,b,c,d");
  if (m.det() != 1) throw std::invalid_argument("matrix " + m.str() + " is not in SL2(Z)");
  return m;
}

SL2 choose_A_ab(long a, long b, long N, int rule) {
  a = mod(a, N);
  b = mod(b, N);
  long d = gcd(gcd(a, b), N);
  if (N == 1) d = 1;
  long alpha = 0, beta = 0;
  bool found = false;
  // Lift (a, b) to (alpha, beta) with gcd(alpha, beta) = d.
  for (long i = 0; i < 4 * N + 8 && !found; ++i) {
    for (long s = 0; s < 4 * N + 8 && !found; ++s) {
      long j = (s % 2 == 1) ? (s + 1) / 2 : -(s / 2);
      long al = a + i * N, be = b + j * N;
      if (gcd(al, be) == d) {
        alpha = al;
        beta = be;
        found = true;
      }
    }
  }
  if (!found) throw std::logic_error("choose_A_ab: no lift found");
  long ap = alpha / d, bp = beta / d;
  long u, v;
  if (bp == 0) {
    if (ap != 1 && ap != -1) throw std::logic_error("choose_A_ab: bad lift");
    u = ap;
    v = 0;
  } else {
    long m = bp < 0 ? -bp : bp;
    u = m == 1 ? 0 : inverse_mod(mod(ap, m), m);
    if (rule == 1) u += m;
    v = (1 - u * ap) / bp;
  }
  SL2 A{u, v, -bp, ap};
  if (rule == 1) A = SL2{1, 0, N, 1} * A;
  if (A.det() != 1) throw std::logic_error("choose_A_ab: determinant");
  if (mod(A.a * a + A.b * b, N) != mod(d, N) || mod(A.c * a + A.d * b, N) != 0)
    throw std::logic_error("choose_A_ab: congruence");
  return A;
}

ScaleSplit split_scaled(long k, const SL2& A) {
  long ma = k * A.a, mb = k * A.b, mc = A.c, md = A.d;
  long x = gcd(ma, mc);
  long p1 = ma / x, p2 = mc / x;
  long s, t;
  if (egcd(p1, p2, s, t) != 1) throw std::logic_error("split_scaled: gcd");
  // A' = (p1 -t; p2 s), U = A'^-1 M
  long y = s * mb + t * md;
  long z = -p2 * mb + p1 * md;
  if (z <= 0 || x * z != k) throw std::logic_error("split_scaled: bad decomposition");
  long j = floor_div(y, z);
  ScaleSplit out;
  out.A = SL2{p1, -t + j * p1, p2, s + j * p2};
  out.x = x;
  out.y = y - j * z;
  out.z = z;
  return out;
}

Rational eta_multiplier(const SL2& A) {
  if (A.c == 0) {
    if (A.d != 1) throw std::invalid_argument("eta_multiplier: normalize to d = 1");
    return make_q(A.b, 24);
  }
  if (A.c < 0) throw std::invalid_argument("eta_multiplier: normalize to c > 0");
  return (make_q(A.a + A.d, 12 * A.c) - dedekind_sum(A.d, A.c)) / 2;
}

namespace {

// Normalizes so that c > 0 or (c, d) = (0, 1). Returns the sign (-1)^w picked up by f |_w (-A).
SL2 normalized(const SL2& A, long w, long& sign) {
  sign = 1;
  if (A.c < 0 || (A.c == 0 && A.d < 0)) {
    sign = (w % 2 == 0) ? 1 : -1;
    return SL2{-A.a, -A.b, -A.c, -A.d};
  }
  return A;
}

}  // namespace

CSeries eta_quotient_at_cusp(const EtaQuotient& eq, const SL2& A0, const Rational& T) {
  Rational wq = eq.weight();
  if (!is_integer(wq)) throw std::domain_error("eta_quotient_at_cusp: half-integral weight");
  long w = to_long(wq);
  long sign;
  SL2 A = normalized(A0, w, sign);
  Cyclotomic pref(eq.prefactor * sign);
  if (A.c > 0) pref *= Cyclotomic::root(-w, 4);  // (-i)^w
  Rational P = 1, lead = 0;
  Rational phase = 0;
  std::vector<std::pair<ScaleSplit, long>> parts;
  for (auto [k, b] : eq.factors) {
    ScaleSplit sp = split_scaled(k, A);
    phase += eta_multiplier(sp.A) * b + make_q(b * sp.y, 24 * sp.z);
    P *= pow_rational(sp.z, b);
    lead += make_q(b * sp.x, 24 * sp.z);
    parts.emplace_back(sp, b);
  }
  Rational rel = T - lead;
  if (rel <= 0) return CSeries(1, T);
  CSeries s = CSeries::constant(Cyclotomic(1), rel);
  for (const auto& [sp, b] : parts) {
    CSeries f(sp.z, rel);
    Rational step = make_q(sp.x, sp.z);
    long nmax = -1;
    if (rel > 0) {
      Rational q = rel / step;
      nmax = to_long(floor(q));
      if (Rational(nmax) == q) --nmax;
    }
    if (nmax >= 0) {
      auto p = euler_power(b, nmax);
      for (long m = 0; m <= nmax; ++m)
        if (p[m] != 0) f.add(m * sp.x, Cyclotomic::root(m * sp.y, sp.z) * Rational(p[m]));
    }
    s = s * f;
  }
  pref *= Cyclotomic::root(to_long(Integer(phase.get_num())), to_long(Integer(phase.get_den())));
  pref *= Cyclotomic::sqrt_rational(1 / P);
  return s.scaled(pref).shifted(lead).normalized();
}

E2Cusp e2_at_cusp(long k, const SL2& A0, const Rational& T) {
  long sign;
  SL2 A = normalized(A0, 2, sign);
  ScaleSplit sp = split_scaled(k, A);
  Rational z2 = make_q(1, sp.z * sp.z);
  CSeries s(sp.z, T);
  s.add(0, Cyclotomic(z2));
  for (long n = 1; make_q(n * sp.x, sp.z) < T; ++n)
    s.add(n * sp.x, Cyclotomic::root(n * sp.y, sp.z) * (z2 * Rational(-24 * sigma1(n))));
  return {s.normalized(), make_q(sp.A.c, sp.z)};
}

CSeries e2n_at_cusp(long N, long scale, const SL2& A, const Rational& T) {
  if (N < 2) throw std::invalid_argument("E2^(N) needs N >= 2");
  E2Cusp hi = e2_at_cusp(N * scale, A, T);
  E2Cusp lo = e2_at_cusp(scale, A, T);
  if (hi.corr * N != lo.corr)
    throw std::logic_error("E2^(N) quasimodular corrections do not cancel at " + A.str());
  CSeries r = hi.holomorphic.scaled(Cyclotomic(Rational(N))) - lo.holomorphic;
  return r.scaled(Cyclotomic(make_q(1, N - 1)));
}

CSeries atom_at_cusp(const TTildeAtom& atom, const SL2& A, const Rational& T) {
  if (atom.kind == TTildeAtom::Kind::E2N) return e2n_at_cusp(atom.level, atom.scale, A, T).scaled(Cyclotomic(atom.coeff));
  return eta_quotient_at_cusp(atom.eta, A, T).scaled(Cyclotomic(atom.coeff));
}

CSeries atoms_at_cusp(const std::vector<TTildeAtom>& atoms, const SL2& A, const Rational& T) {
  CSeries s(1, T);
  for (const auto& at : atoms) s += atom_at_cusp(at, A, T);
  return s;
}

CSeries ttilde_at_cusp(const ClassRecord& rec, const SL2& A, const Rational& T) {
  if (!rec.has_ttilde) throw std::domain_error("class " + rec.name + " has no closed-form T~; cusp expansions unavailable");
  return atoms_at_cusp(rec.ttilde, A, T);
}

CJacobi genus_at_cusp(const ClassRecord& rec, const SL2& A, const Rational& T) {
  CSeries tt = ttilde_at_cusp(rec, A, T);
  auto lift = [](const Rational& r) { return Cyclotomic(r); };
  CJacobi p01 = phi_0_1(T).map_coeffs(lift);
  CJacobi pm2 = phi_m2_1(T).map_coeffs(lift);
  CJacobi g = p01.scaled(Cyclotomic(make_q(rec.chi(), 12))) + pm2 * tt;
  g.weight = 0;
  g.index = 1;
  g.level = rec.level;
  return g.normalized();
}

}  // namespace m24
