#include "doctest.h"
#include "m24/cusp.hpp"
#include "m24/genera.hpp"
#include "numeric.hpp"

using namespace m24;

namespace {

bool congruent(const SL2& A, long a, long b, long N) {
  long d = gcd(gcd(a, b), N);
  return mod(A.a * a + A.b * b - d, N) == 0 && mod(A.c * a + A.d * b, N) == 0 && A.det() == 1;
}

}  // namespace

TEST_SUITE("cusp_transform") {
  TEST_CASE("choice of A_ab") {
    CHECK(choose_A_ab(1, 0, 7) == SL2{1, 0, 0, 1});
    SL2 s = choose_A_ab(0, 1, 5);
    CHECK(congruent(s, 0, 1, 5));
    CHECK(choose_A_ab(2, 3, 6) == SL2{2, -1, -3, 2});
    for (long N : {4L, 9L, 12L})
      for (long a = 0; a < N; ++a)
        for (long b = 0; b < N; ++b) {
          CHECK(congruent(choose_A_ab(a, b, N, 0), a, b, N));
          CHECK(congruent(choose_A_ab(a, b, N, 1), a, b, N));
        }
  }

  TEST_CASE("eta(3 tau)^8 under S") {
    EtaQuotient e;
    e.factors = {{3, 8}};
    CSeries s = eta_quotient_at_cusp(e, SL2::S(), Rational(1));
    CHECK(s.coeff(make_q(1, 9)) == Cyclotomic(make_q(1, 81)));
    CHECK(s.coeff(make_q(4, 9)) == Cyclotomic(make_q(-8, 81)));
    CHECK(s.coeff(make_q(7, 9)) == Cyclotomic(make_q(20, 81)));
  }

  TEST_CASE("eta multiplier under T and invariance of eta^24") {
    CHECK(eta_multiplier(SL2::T()) == make_q(1, 24));
    EtaQuotient d;
    d.factors = {{1, 24}};
    CSeries base = to_cyclotomic(eta_quotient_series(d, Rational(4)));
    for (SL2 A : {SL2::S(), SL2{2, 1, 1, 1}, SL2{1, 0, 5, 1}, SL2{3, 2, 7, 5}})
      CHECK(eta_quotient_at_cusp(d, A, Rational(4)).agrees_with(base));
  }

  TEST_CASE("E2^(N) at cusps") {
    CSeries s = e2n_at_cusp(2, 1, SL2::S(), Rational(2));
    CHECK(s.coeff(Rational(0)) == Cyclotomic(make_q(-1, 2)));
    CHECK(s.coeff(make_q(1, 2)) == Cyclotomic(-12));
    CHECK(s.coeff(Rational(1)) == Cyclotomic(-12));
    CHECK(s.coeff(make_q(3, 2)) == Cyclotomic(-48));
    CSeries inv = e2n_at_cusp(4, 1, SL2{1, 0, 4, 1}, Rational(4));
    CHECK(inv.agrees_with(to_cyclotomic(e2n_series(4, 1, Rational(4)))));
    CSeries t = e2n_at_cusp(3, 1, SL2::T(), Rational(3));
    CHECK(t.agrees_with(to_cyclotomic(e2n_series(3, 1, Rational(3)))));
  }

  TEST_CASE("level one genus is invariant") {
    const ClassRecord& rec = shipped_data().classes.get("1A");
    CJacobi g = genus_at_cusp(rec, SL2{2, 1, 5, 3}, Rational(3));
    CHECK(g.agrees_with(genus(rec, Rational(3)).map_coeffs([](const Rational& r) { return Cyclotomic(r); })));
  }

  TEST_CASE("Gamma0(N) invariance of T~") {
    const DataSet& ds = shipped_data();
    for (const char* name : {"3B", "4C", "6A"}) {
      const ClassRecord& rec = ds.classes.get(name);
      long N = rec.level;
      SL2 g{1, 0, N, 1};
      CHECK(ttilde_at_cusp(rec, g, Rational(3)).agrees_with(to_cyclotomic(ttilde_series(rec, Rational(3)))));
      SL2 h{N + 1, 1, N, 1};
      CHECK(ttilde_at_cusp(rec, h, Rational(3)).agrees_with(to_cyclotomic(ttilde_series(rec, Rational(3)))));
    }
  }

  TEST_CASE("numerical shadow of T~ at cusps") {
    using namespace numeric;
    const DataSet& ds = shipped_data();
    for (const char* name : {"3B", "4C", "6B", "12A", "21AB"}) {
      const ClassRecord& rec = ds.classes.get(name);
      double worst = 0;
      for (long c : {1L, 2L, 3L, 4L, 6L, 7L, 9L}) {
        for (long a : {1L, 5L}) {
          long x, y;
          if (egcd(a, c, x, y) != 1) continue;
          SL2 A{a, -y, c, x};
          cd tau(-double(A.d) / c + 0.1234 / c, 1.0 / c);
          cd At = (double(A.a) * tau + double(A.b)) / (double(A.c) * tau + double(A.d));
          CSeries cusp = ttilde_at_cusp(rec, A, Rational(4 * c + 4));
          QSeries inf = ttilde_series(rec, Rational(long(25.0 / (2 * kPi * At.imag())) + 4));
          cd lhs = eval(inf, At) / std::pow(double(A.c) * tau + double(A.d), 2);
          cd rhs = eval(cusp, tau);
          worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
        }
      }
      INFO(name);
      CHECK(worst < 1e-7);
    }
  }
}
