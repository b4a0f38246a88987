#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace m24 {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "p", "-p", "p/q"; the result is canonicalized.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& x);
Rational make_q(long num, long den = 1);

bool is_integer(const Rational& x);
Integer floor(const Rational& x);
// Fractional part in [0, 1).
Rational frac(const Rational& x);
long to_long(const Integer& x);
long to_long(const Rational& x);  // requires an integer value
// base^e for any integer e; base must be nonzero when e < 0.
Rational pow_rational(long base, long e);

long floor_div(long a, long b);
long mod(long a, long b);
long gcd(long a, long b);
long lcm(long a, long b);
// Returns g = gcd(a, b) and x, y with a x + b y = g.
long egcd(long a, long b, long& x, long& y);
long inverse_mod(long a, long n);

std::vector<long> divisors(long n);
std::vector<std::pair<long, int>> factorize(long n);
int mobius(long n);
long totient(long n);
long radical(long n);
long sigma1(long n);
int kronecker(long a, long n);
// Dedekind sum s(d, c) for c > 0.
Rational dedekind_sum(long d, long c);
// Units of Z/n in increasing order.
std::vector<long> units_mod(long n);

}  // namespace m24
