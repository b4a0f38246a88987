#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "m24/classes.hpp"
#include "m24/data.hpp"
#include "m24/jacobi.hpp"
#include "m24/weil.hpp"

namespace m24 {

// sum c(n, r, m) q^n zeta^r s^m with integral exponents, known for n <= qmax and m <= smax.
// Products are only formed between series supported in n, m >= 0.
class SiegelSeries {
 public:
  SiegelSeries() = default;
  SiegelSeries(long qmax, long smax) : qmax_(qmax), smax_(smax) {}

  long qmax() const { return qmax_; }
  long smax() const { return smax_; }
  const std::map<std::pair<long, long>, Laurent<Rational>>& rows() const { return rows_; }

  void add(long n, long r, long m, const Rational& v);
  Rational coeff(long n, long r, long m) const;
  bool in_box(long n, long m) const { return n <= qmax_ && m <= smax_; }

  SiegelSeries truncated(long qmax, long smax) const;
  SiegelSeries scaled(const Rational& c) const;
  SiegelSeries shifted(long n, long r, long m) const;  // times q^n zeta^r s^m
  SiegelSeries& operator+=(const SiegelSeries& o);
  friend SiegelSeries operator*(const SiegelSeries& a, const SiegelSeries& b);
  friend bool operator==(const SiegelSeries& a, const SiegelSeries& b);

  // exp of a series without (n, m) = (0, 0) terms, through the (n + m)-graded recurrence.
  SiegelSeries exp() const;

  // Coefficient of s^m as a Jacobi series known below q^(qmax + 1).
  QJacobi fj(long m) const;
  static SiegelSeries from_fj(const std::map<long, QJacobi>& coeffs, long qmax, long smax);

  std::string str() const;

 private:
  long qmax_ = 0, smax_ = 0;
  std::map<std::pair<long, long>, Laurent<Rational>> rows_;
};

// Dirichlet character a -> kronecker(D, a); D = 1 is the trivial character.
struct DirichletChar {
  long D = 1;
  int operator()(long a) const { return D == 1 ? 1 : kronecker(D, a); }
};

// Character of the eta product of a class: trivial for even weight,
// kronecker((-1)^w prod k^(b_k), .) for odd weight w.
DirichletChar eta_character(const ClassRecord& rec);

// phi | T_-^(D)(m) for m >= 1, weight k; phi must have integral exponents.
QJacobi hecke_Tm(const QJacobi& phi, long m, long D, long k, const DirichletChar& chi, long qmax);
// Index-zero operator without its constant; only the case c(0, r) = 0 for all r is supported.
QJacobi hecke_T0(const QJacobi& phi, long D, long k, const DirichletChar& chi, long qmax);

// Input tuple (phi_d)_{d | N} of weight k, index 1, with expansions at infinity.
struct LiftInput {
  std::string name;
  long N = 1;
  long weight = 0;
  std::map<long, QJacobi> phi;  // d | N; absent entries are zero
  Rational c(long d, long n, long r) const;
};

// Twisted genera (phi_{g^d})_{d | N_g} known below q^(qorder + 1).
LiftInput genus_lift_input(const ClassTable& classes, const std::string& cls, long qorder);
// eta_g phi_{-2,1} to q^qorder, weight k_g.
QJacobi eta_phi(const ClassRecord& rec, long qorder);
// f_g of the correction table (prefactor * eta quotient * phi_{-2,1}), or zero.
QJacobi correction_input(const DataSet& ds, const std::string& cls, long qorder);

struct WeylVector {
  Rational A, B, C;
  friend bool operator==(const WeylVector&, const WeylVector&) = default;
};

Rational mult(const LiftInput& in, long n, long r, long m);
Rational mult_d(const LiftInput& in, long d, long n, long r);
WeylVector weyl_vector(const LiftInput& in);
Rational product_weight(const LiftInput& in);  // (1/2) sum_d mult_d(0, 0)

struct FJExpansion {
  std::string name;
  long t = 1, N = 1;
  WeylVector weyl;
  Rational weight;
  SiegelSeries series;
  QJacobi coefficient(long m) const { return series.fj(m); }
};

enum class ProductMode { Product, FJ, Exp };
ProductMode parse_mode(const std::string& s);
std::string mode_name(ProductMode m);

// Borcherds product of the tuple on n <= qmax, m <= smax.
FJExpansion borcherds_product(const LiftInput& in, ProductMode mode, long qmax, long smax);

// Additive lift sum_{m >= 0} phi | T_-^(N)(m) s^m on n <= qmax, m <= smax.
FJExpansion gritsenko_lift(const QJacobi& phi, long N, long k, const DirichletChar& chi, long qmax, long smax,
                           const std::string& name = "");
// exp(-sum_{m >= 1} f | T_-^(N)(m) s^m) for a weight-0 index-1 input f.
FJExpansion weight_zero_exp_lift(const QJacobi& f, long N, long qmax, long smax);

// lim_{z -> 0} Psi / (2 pi i z)^2: coefficient (n, m) = (1/2) sum_r r^2 c(n, r, m).
std::map<std::pair<long, long>, Rational> quasi_pullback(const FJExpansion& psi);

// Humbert surface data (a, n, r, m, b) with discriminant ab/N - nm + r^2/4 and multiplicity.
struct HumbertEntry {
  long a = 0, n = 1, r = 0, m = 0, b = 0;
  Rational delta;
  Rational multiplicity;
  long count = 1;  // discriminant-group elements +-u gamma, u a unit, sharing this entry
};
std::vector<HumbertEntry> divisors(const PrincipalPart& pp, long N, const Rational& delta_max);

// (1/N) sum_d sum_lambda totient(N/d) c_d(-lambda^2, 0).
Rational duality_D0(const LiftInput& in);

}  // namespace m24
