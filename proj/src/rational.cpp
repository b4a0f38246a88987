#include "m24/rational.hpp"

#include <cstdlib>
#include <stdexcept>

namespace m24 {

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ' && ch != '+') s += ch;
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto slash = s.find('/');
  auto check = [&](const std::string& part) {
    size_t i = (!part.empty() && part[0] == '-') ? 1 : 0;
    if (i >= part.size()) throw std::invalid_argument("bad rational: " + text);
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') throw std::invalid_argument("bad rational: " + text);
  };
  Rational r;
  if (slash == std::string::npos) {
    check(s);
    r = Rational(Integer(s), 1);
  } else {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    check(num);
    check(den);
    Integer d(den);
    if (d == 0) throw std::invalid_argument("zero denominator: " + text);
    r = Rational(Integer(num), d);
  }
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) { return x.get_str(); }

Rational make_q(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

bool is_integer(const Rational& x) { return x.get_den() == 1; }

Integer floor(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Rational frac(const Rational& x) { return x - Rational(floor(x)); }

long to_long(const Integer& x) {
  if (!x.fits_slong_p()) throw std::overflow_error("integer exceeds long");
  return x.get_si();
}

long to_long(const Rational& x) {
  if (!is_integer(x)) throw std::domain_error("not an integer: " + to_string(x));
  return to_long(x.get_num());
}

Rational pow_rational(long base, long e) {
  Integer p;
  mpz_pow_ui(p.get_mpz_t(), Integer(base).get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0) return Rational(p);
  if (p == 0) throw std::domain_error("pow_rational: zero to a negative power");
  Rational r(Integer(1), p);
  r.canonicalize();
  return r;
}

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long mod(long a, long b) {
  long r = a % b;
  return r < 0 ? r + (b < 0 ? -b : b) : r;
}

long gcd(long a, long b) {
  a = std::labs(a);
  b = std::labs(b);
  while (b) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long lcm(long a, long b) {
  if (a == 0 || b == 0) return 0;
  return std::labs(a / gcd(a, b) * b);
}

long egcd(long a, long b, long& x, long& y) {
  long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    long q = floor_div(a, b);
    long t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
    t = y0 - q * y1;
    y0 = y1;
    y1 = t;
  }
  if (a < 0) {
    a = -a;
    x0 = -x0;
    y0 = -y0;
  }
  x = x0;
  y = y0;
  return a;
}

long inverse_mod(long a, long n) {
  if (n == 1) return 0;
  long x, y;
  if (egcd(mod(a, n), n, x, y) != 1) throw std::domain_error("not invertible mod n");
  return mod(x, n);
}

std::vector<long> divisors(long n) {
  std::vector<long> lo, hi;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    lo.push_back(d);
    if (d != n / d) hi.push_back(n / d);
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

std::vector<std::pair<long, int>> factorize(long n) {
  std::vector<std::pair<long, int>> out;
  for (long p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

int mobius(long n) {
  int m = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    m = -m;
  }
  return m;
}

long totient(long n) {
  long t = n;
  for (auto [p, e] : factorize(n)) t = t / p * (p - 1);
  return t;
}

long radical(long n) {
  long r = 1;
  for (auto [p, e] : factorize(n)) r *= p;
  return r;
}

long sigma1(long n) {
  long s = 0;
  for (long d : divisors(n)) s += d;
  return s;
}

int kronecker(long a, long n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  if (v > 0) {
    if (a % 2 == 0) return 0;
    long r8 = mod(a, 8);
    if ((v & 1) && (r8 == 3 || r8 == 5)) result = -result;
  }
  // Jacobi symbol (a / n) for odd n > 0.
  long aa = mod(a, n);
  long nn = n;
  while (aa != 0) {
    while (aa % 2 == 0) {
      aa /= 2;
      long r8 = nn % 8;
      if (r8 == 3 || r8 == 5) result = -result;
    }
    std::swap(aa, nn);
    if (aa % 4 == 3 && nn % 4 == 3) result = -result;
    aa %= nn;
  }
  return nn == 1 ? result : 0;
}

Rational dedekind_sum(long d, long c) {
  if (c <= 0) throw std::domain_error("dedekind_sum needs c > 0");
  // s(d,c) = sum_{k=1}^{c-1} ((k/c)) ((dk/c)); ((x)) = x - floor(x) - 1/2 off integers.
  Rational s = 0;
  for (long k = 1; k < c; ++k) {
    long dk = mod(d * k, c);
    if (dk == 0) continue;
    s += (make_q(k, c) - make_q(1, 2)) * (make_q(dk, c) - make_q(1, 2));
  }
  return s;
}

std::vector<long> units_mod(long n) {
  std::vector<long> u;
  for (long a = 0; a < n; ++a)
    if (gcd(a, n) == 1) u.push_back(a);
  if (n == 1) u = {0};
  return u;
}

}  // namespace m24
