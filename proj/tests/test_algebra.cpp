#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "m24/cyclotomic.hpp"
#include "m24/jacobi.hpp"
#include "m24/series.hpp"

using namespace m24;

TEST_SUITE("exact_algebra") {
  TEST_CASE("rational helpers") {
    CHECK(parse_rational("-6/4") == make_q(-3, 2));
    CHECK(mod(-7, 9) == 2);
    CHECK(inverse_mod(2, 9) == 5);
    CHECK(mobius(30) == -1);
    CHECK(mobius(12) == 0);
    CHECK(totient(144) == 48);
    CHECK(divisors(12) == std::vector<long>{1, 2, 3, 4, 6, 12});
    CHECK(kronecker(-4, 3) == -1);
    CHECK(kronecker(-1024, 3) == -1);
    CHECK(units_mod(9) == std::vector<long>{1, 2, 4, 5, 7, 8});
    CHECK(pow_rational(2, -3) == make_q(1, 8));
  }

  TEST_CASE("cyclotomic reduction") {
    Cyclotomic i = Cyclotomic::root(1, 4);
    CHECK(i * i == Cyclotomic(-1));
    Cyclotomic z6 = Cyclotomic::root(1, 6);
    CHECK(z6 + z6.conj() == Cyclotomic(1));
    CHECK((z6 + z6.conj()).is_rational());
    Cyclotomic s;
    for (long a : units_mod(9)) s += Cyclotomic::root(a, 9);
    CHECK(s == Cyclotomic(0));
    // Ramanujan sum c_12(1) = mu(12) = 0 and c_12(2) = phi(12)/phi(6) mu(6) = 2
    Cyclotomic r2;
    for (long a : units_mod(12)) r2 += Cyclotomic::root(2 * a, 12);
    CHECK(r2 == Cyclotomic(2));
  }

  TEST_CASE("cyclotomic sum agrees with complex evaluation") {
    const double pi = std::acos(-1.0);
    Cyclotomic x = Cyclotomic::root(1, 9) * Rational(3) + Cyclotomic::root(4, 9) - Cyclotomic::root(2, 3) * make_q(1, 2);
    std::complex<double> num = 3.0 * std::polar(1.0, 2 * pi / 9) + std::polar(1.0, 8 * pi / 9) - 0.5 * std::polar(1.0, 4 * pi / 3);
    std::complex<double> got = 0;
    for (const auto& [k, c] : x.coords()) got += c.get_d() * std::polar(1.0, 2 * pi * k / x.conductor());
    CHECK(std::abs(got - num) < 1e-12);
  }

  TEST_CASE("gauss sum square root") {
    for (long n : {2L, 3L, 5L, 8L, 12L}) {
      Cyclotomic s = Cyclotomic::sqrt_rational(Rational(n));
      CHECK(s * s == Cyclotomic(n));
    }
  }

  TEST_CASE("series product and truncation") {
    QSeries a(1, Rational(10)), b(1, Rational(10));
    a.add(0, 1);
    a.add(1, -1);
    for (long k = 0; k < 3; ++k) b.add(k, 1);
    QSeries p = a * b;
    CHECK(p.coeff(Rational(0)) == 1);
    CHECK(p.coeff(Rational(1)) == 0);
    CHECK(p.coeff(Rational(3)) == -1);
    CHECK(*p.trunc() == 10);

    QSeries e(1, Rational(13));
    e.add(0, 1);
    for (long n = 1; n <= 12; ++n) {
      QSeries f(1, Rational(13));
      f.add(0, 1);
      f.add(n, -1);
      e = e * f;
    }
    std::map<long, Rational> want{{0, 1}, {1, -1}, {2, -1}, {5, 1}, {7, 1}, {12, -1}};
    for (long k = 0; k < 13; ++k) CHECK(e.coeff(Rational(k)) == (want.count(k) ? want[k] : Rational(0)));
  }

  TEST_CASE("fractional exponents") {
    QSeries a = QSeries::monomial(make_q(1, 24), 1);
    QSeries b = QSeries::monomial(make_q(1, 8), 1);
    QSeries c = a * b;
    CHECK(c.coeff(make_q(1, 6)) == 1);
    CHECK(c.terms().size() == 1);
  }

  TEST_CASE("inverse and exp") {
    QSeries a(1, Rational(8));
    a.add(0, 1);
    a.add(1, -1);
    QSeries inv = a.inverse();
    for (long k = 0; k < 8; ++k) CHECK(inv.coeff(Rational(k)) == 1);
    QSeries one = a * inv;
    CHECK(one.coeff(Rational(0)) == 1);
    for (long k = 1; k < 8; ++k) CHECK(one.coeff(Rational(k)) == 0);

    QSeries x(1, Rational(4));
    x.add(1, 1);
    QSeries ex = x.exp();
    CHECK(ex.coeff(Rational(2)) == make_q(1, 2));
    CHECK(ex.coeff(Rational(3)) == make_q(1, 6));
    CHECK(ex.log().agrees_with(x));

    // exp(-sum x^a / a) = 1 - x
    QSeries L(1, Rational(9));
    for (long k = 1; k < 9; ++k) L.add(k, make_q(-1, k));
    QSeries E = L.exp();
    CHECK(E.coeff(Rational(0)) == 1);
    CHECK(E.coeff(Rational(1)) == -1);
    for (long k = 2; k < 9; ++k) CHECK(E.coeff(Rational(k)) == 0);
  }

  TEST_CASE("random ring axioms") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-5, 5), expo(0, 11);
    auto rnd = [&] {
      QSeries s(3, Rational(4));
      for (int i = 0; i < 5; ++i) s.add(expo(rng), coef(rng));
      return s;
    };
    for (int t = 0; t < 20; ++t) {
      QSeries a = rnd(), b = rnd(), c = rnd();
      CHECK(((a * b) * c).agrees_with(a * (b * c)));
      CHECK((a * (b + c)).agrees_with(a * b + a * c));
    }
  }

  TEST_CASE("truncation is not over-reported") {
    QSeries a(1, Rational(5));
    a.add(0, 2);
    a.add(2, 1);
    QSeries lo = a.inverse();
    QSeries b(1, Rational(9));
    b.add(0, 2);
    b.add(2, 1);
    QSeries hi = b.inverse();
    CHECK(*lo.trunc() <= 5);
    CHECK(lo.agrees_with(hi));
  }

  TEST_CASE("jacobi product and monomial inverse") {
    QJacobi f(1, 1, Rational(3));
    f.add(0, 1, 1);
    f.add(1, 0, 3);
    QJacobi g = f.inverse();
    QJacobi one = f * g;
    CHECK(one.coeff(Rational(0), Rational(0)) == 1);
    CHECK(one.coeff(Rational(1), Rational(0)) == 0);
    CHECK(one.coeff(Rational(2), Rational(-2)) == 0);
  }
}
