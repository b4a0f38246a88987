#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "m24/jacobi.hpp"
#include "m24/series.hpp"

namespace m24 {

// prefactor * prod eta(k tau)^(b_k)
struct EtaQuotient {
  std::vector<std::pair<long, long>> factors;  // (scale, exponent), scales increasing
  Rational prefactor = 1;

  Rational weight() const;
  Rational leading_exponent() const;  // (1/24) sum k b_k
  void canonicalize();
  std::string str() const;
};

// One summand of the weight-2 form attached to a class.
struct TTildeAtom {
  enum class Kind { Eta, E2N };
  Kind kind = Kind::Eta;
  EtaQuotient eta;  // Kind::Eta; the prefactor is folded into coeff
  long level = 0;   // Kind::E2N
  long scale = 1;   // Kind::E2N
  Rational coeff = 1;
  std::string str() const;
};

// Kronecker symbols (12/n) and (-4/n) by period-12 and period-4 tables.
int chi12(long n);
int chi4(long n);

// Coefficients of prod_{n>=1} (1 - X^n)^b for X^0..X^nmax.
std::vector<Integer> euler_power(long b, long nmax);

// eta(scale tau)^b to q^T.
QSeries eta_power_series(long scale, long b, const Rational& T);
QSeries eta_series(long scale, const Rational& T);
// Sum form of eta(tau).
QSeries eta_sum_series(const Rational& T);
QSeries eta_quotient_series(const EtaQuotient& eq, const Rational& T);

// Product form, qDenom 8, zDenom 2.
QJacobi theta_series(const Rational& T);
QJacobi theta_sum_series(const Rational& T);

QJacobi phi_m2_1(const Rational& T);
QJacobi phi_0_1(const Rational& T);
// which = -2 or 0.
QJacobi phi_weak_basis(int which, const Rational& T);

QSeries e2_series(const Rational& T);
// E2^(N)(scale tau) = (N E2(N scale tau) - E2(scale tau)) / (N - 1).
QSeries e2n_series(long N, long scale, const Rational& T);

QSeries atom_series(const TTildeAtom& atom, const Rational& T);
QSeries atoms_series(const std::vector<TTildeAtom>& atoms, const Rational& T);

// prod_d eta(d tau)^(m_d(0)) prod_{r>=1} (theta(d tau, d r z)/eta(d tau))^(m_d(r)).
QJacobi theta_block(const std::map<long, std::map<long, Rational>>& mult, const Rational& T);

}  // namespace m24
