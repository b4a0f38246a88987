#pragma once

#include <string>

#include "m24/classes.hpp"
#include "m24/jacobi.hpp"
#include "m24/series.hpp"

namespace m24 {

struct SL2 {
  long a = 1, b = 0, c = 0, d = 1;

  long det() const { return a * d - b * c; }
  SL2 inverse() const { return {d, -b, -c, a}; }
  std::string str() const;
  static SL2 S() { return {0, -1, 1, 0}; }
  static SL2 T(long j = 1) { return {1, j, 0, 1}; }
  friend SL2 operator*(const SL2& x, const SL2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend bool operator==(const SL2&, const SL2&) = default;
};

SL2 parse_sl2(const std::string& text);  // "a,b,c,d"

// Matrix A with A (a, b)^T = (gcd(a, b, N), 0)^T mod N. rule 0 is the default
// extended-gcd choice; rule 1 is an independent choice used to test independence.
SL2 choose_A_ab(long a, long b, long N, int rule = 0);

// (k 0; 0 1) A = A' (x y; 0 z) with A' in SL2(Z), 0 <= y < z.
struct ScaleSplit {
  SL2 A;
  long x = 1, y = 0, z = 1;
};
ScaleSplit split_scaled(long k, const SL2& A);

// Rational r with eta(A tau) = e(r) (-i (c tau + d))^(1/2) eta(tau), for c > 0 or (c, d) = (0, 1).
Rational eta_multiplier(const SL2& A);

// (prefactor prod eta(k tau)^(b_k)) |_w A for integral weight w, to q^T.
CSeries eta_quotient_at_cusp(const EtaQuotient& eq, const SL2& A, const Rational& T);

// E2(k tau) |_2 A = holomorphic + (12 / (2 pi i)) corr / (c tau + d).
struct E2Cusp {
  CSeries holomorphic;
  Rational corr;
};
E2Cusp e2_at_cusp(long k, const SL2& A, const Rational& T);
// E2^(N)(scale tau) |_2 A; the quasimodular corrections must cancel.
CSeries e2n_at_cusp(long N, long scale, const SL2& A, const Rational& T);

CSeries atom_at_cusp(const TTildeAtom& atom, const SL2& A, const Rational& T);
CSeries atoms_at_cusp(const std::vector<TTildeAtom>& atoms, const SL2& A, const Rational& T);
CSeries ttilde_at_cusp(const ClassRecord& rec, const SL2& A, const Rational& T);

// phi_g |_{0,1} A = (chi/12) phi_{0,1} + (T~_g |_2 A) phi_{-2,1}.
CJacobi genus_at_cusp(const ClassRecord& rec, const SL2& A, const Rational& T);

}  // namespace m24
