#pragma once

#include <map>
#include <string>
#include <vector>

#include "m24/rational.hpp"

namespace m24 {

// Element of Q(zeta_n) in the power basis 1, x, ..., x^(phi(n)-1) modulo Phi_n(x),
// x = e(1/n). Coordinates are stored sparsely and are always canonical.
class Cyclotomic {
 public:
  Cyclotomic() = default;
  Cyclotomic(const Rational& r);  // NOLINT(google-explicit-constructor)
  Cyclotomic(long v) : Cyclotomic(Rational(v)) {}  // NOLINT(google-explicit-constructor)

  // e(k/n), stored at conductor n / gcd(k, n).
  static Cyclotomic root(long k, long n);
  // Builds an element from unreduced exponents of e(1/n).
  static Cyclotomic from_powers(long n, const std::map<long, Rational>& powers);
  // Positive square root of a positive rational, realized through Gauss sums.
  static Cyclotomic sqrt_rational(const Rational& r);

  long conductor() const { return n_; }
  const std::map<long, Rational>& coords() const { return c_; }
  std::vector<Rational> dense_coords() const;

  bool is_zero() const { return c_.empty(); }
  bool is_rational() const;
  Rational to_rational() const;  // throws unless is_rational()
  // Single term v * x^k.
  bool is_monomial() const { return c_.size() == 1; }

  Cyclotomic lift(long m) const;  // m must be a multiple of conductor()
  Cyclotomic galois(long u) const;  // x -> x^u, gcd(u, n) = 1
  Cyclotomic conj() const { return galois(-1); }
  Cyclotomic inverse() const;

  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Rational& r);
  Cyclotomic operator-() const;

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Rational& r) { return a *= r; }
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  std::string str() const;

 private:
  long n_ = 1;
  std::map<long, Rational> c_;
};

// Unreduced accumulator in the group ring of Z/L. Used for long sums of roots of
// unity that are reduced once at the end.
class RootSum {
 public:
  explicit RootSum(long L = 1) : L_(L) {}
  long modulus() const { return L_; }
  // Adds v * e(num/den).
  void add_root(const Rational& v, long num, long den);
  // Adds x * e(num/den).
  void add(const Cyclotomic& x, long num = 0, long den = 1);
  Cyclotomic reduce() const;
  bool empty() const { return t_.empty(); }

 private:
  void widen(long m);
  long L_;
  std::map<long, Rational> t_;
};

// Coefficients of the cyclotomic polynomial Phi_n, lowest degree first.
std::vector<long> cyclotomic_polynomial(long n);

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const Cyclotomic& x) { return x.is_zero(); }
inline Rational inverse(const Rational& x) { return 1 / x; }
inline Cyclotomic inverse(const Cyclotomic& x) { return x.inverse(); }
inline std::string coeff_str(const Rational& x) { return x.get_str(); }
inline std::string coeff_str(const Cyclotomic& x) { return x.str(); }

}  // namespace m24
