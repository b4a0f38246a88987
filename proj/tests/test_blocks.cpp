#include "doctest.h"
#include "m24/blocks.hpp"

using namespace m24;

TEST_SUITE("modular_blocks") {
  TEST_CASE("eta expansions") {
    QSeries e = eta_series(1, Rational(8));
    std::map<Rational, long> want{{make_q(1, 24), 1}, {make_q(25, 24), -1}, {make_q(49, 24), -1},
                                  {make_q(121, 24), 1}, {make_q(169, 24), 1}};
    for (auto [x, c] : want) CHECK(e.coeff(x) == c);
    CHECK(e.coeff(make_q(73, 24)) == 0);
    CHECK(e.agrees_with(eta_sum_series(Rational(8))));

    EtaQuotient e3;
    e3.factors = {{3, 8}};
    QSeries s = eta_quotient_series(e3, Rational(8));
    CHECK(s.coeff(Rational(1)) == 1);
    CHECK(s.coeff(Rational(4)) == -8);
    CHECK(s.coeff(Rational(7)) == 20);
    CHECK(s.coeff(Rational(2)) == 0);

    EtaQuotient d;
    d.factors = {{1, 24}};
    QSeries delta = eta_quotient_series(d, Rational(5));
    CHECK(delta.coeff(Rational(1)) == 1);
    CHECK(delta.coeff(Rational(2)) == -24);
    CHECK(delta.coeff(Rational(3)) == 252);
    CHECK(delta.coeff(Rational(4)) == -1472);
  }

  TEST_CASE("eta quotients with negative exponents") {
    EtaQuotient f4c;
    f4c.factors = {{2, 4}, {4, -4}, {8, 4}};
    f4c.prefactor = 16;
    QSeries s = eta_quotient_series(f4c, Rational(3));
    CHECK(f4c.leading_exponent() == 1);
    CHECK(s.coeff(Rational(1)) == 16);
    CHECK(s.coeff(Rational(0)) == 0);

    EtaQuotient f3b;
    f3b.factors = {{1, 3}, {3, -2}, {9, 3}};
    f3b.prefactor = 18;
    CHECK(eta_quotient_series(f3b, Rational(3)).coeff(Rational(1)) == 18);
  }

  TEST_CASE("theta function") {
    QJacobi t = theta_series(Rational(11));
    CHECK(t.coeff(make_q(1, 8), make_q(1, 2)) == 1);
    CHECK(t.coeff(make_q(1, 8), make_q(-1, 2)) == -1);
    CHECK(t.coeff(make_q(9, 8), make_q(3, 2)) == -1);
    CHECK(t.agrees_with(theta_sum_series(Rational(11))));
  }

  TEST_CASE("weak Jacobi generators") {
    QJacobi a = phi_m2_1(Rational(4));
    CHECK(a.coeff(Rational(0), Rational(1)) == 1);
    CHECK(a.coeff(Rational(0), Rational(0)) == -2);
    CHECK(a.coeff(Rational(0), Rational(-1)) == 1);
    QJacobi b = phi_0_1(Rational(4));
    CHECK(b.coeff(Rational(0), Rational(0)) == 10);
    CHECK(b.coeff(Rational(1), Rational(2)) == 10);
    CHECK(b.coeff(Rational(1), Rational(1)) == -64);
    CHECK(b.coeff(Rational(1), Rational(0)) == 108);
    CHECK(b.coeff(Rational(2), Rational(3)) == 1);
    CHECK(b.coeff(Rational(2), Rational(2)) == 108);
    CHECK(b.coeff(Rational(2), Rational(1)) == -513);
    CHECK(b.coeff(Rational(2), Rational(0)) == 808);
    // c(n, r) depends only on 4n - r^2
    for (const auto* f : {&a, &b})
      for (const auto& [n, row] : f->rows())
        for (const auto& [r, c] : row) {
          long D = 4 * n - r * r;
          for (long n2 = 0; n2 < 4; ++n2)
            for (long r2 = -4; r2 <= 4; ++r2)
              if (4 * n2 - r2 * r2 == D) CHECK(f->coeff(Rational(n2), Rational(r2)) == c);
        }
  }

  TEST_CASE("E2 and E2^(N)") {
    QSeries e2 = e2_series(Rational(4));
    CHECK(e2.coeff(Rational(0)) == 1);
    CHECK(e2.coeff(Rational(1)) == -24);
    CHECK(e2.coeff(Rational(2)) == -72);
    CHECK(e2.coeff(Rational(3)) == -96);
    QSeries e22 = e2n_series(2, 1, Rational(4));
    CHECK(e22.coeff(Rational(0)) == 1);
    CHECK(e22.coeff(Rational(1)) == 24);
    CHECK(e22.coeff(Rational(2)) == 24);
    CHECK(e22.coeff(Rational(3)) == 96);
    for (long N : {3L, 5L, 11L}) CHECK(e2n_series(N, 1, Rational(2)).coeff(Rational(0)) == 1);
  }

  TEST_CASE("theta blocks") {
    QJacobi t1 = theta_block({{1, {{0, 20}, {1, 2}}}}, Rational(4));
    EtaQuotient d;
    d.factors = {{1, 24}};
    QJacobi want = phi_m2_1(Rational(4)) * eta_quotient_series(d, Rational(4));
    CHECK(t1.agrees_with(want));
    QJacobi t2 = theta_block({{1, {{0, 4}, {1, 2}}}, {2, {{0, 8}}}}, Rational(4));
    EtaQuotient e2a;
    e2a.factors = {{1, 8}, {2, 8}};
    CHECK(t2.agrees_with(phi_m2_1(Rational(4)) * eta_quotient_series(e2a, Rational(4))));
    QJacobi one = theta_block({}, Rational(3));
    CHECK(one.coeff(Rational(0), Rational(0)) == 1);
    CHECK(one.rows().size() == 1);
  }
}
