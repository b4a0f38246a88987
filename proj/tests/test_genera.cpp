#include "doctest.h"
#include "m24/blocks.hpp"
#include "m24/genera.hpp"

using namespace m24;

TEST_SUITE("twisted_genera") {
  const DataSet& ds = shipped_data();

  TEST_CASE("shipped data validates") { CHECK(validate_dataset(ds).empty()); }

  TEST_CASE("genus rows") {
    QJacobi g1 = genus(ds.classes.get("1A"), Rational(4));
    CHECK(g1.agrees_with(phi_0_1(Rational(4)).scaled(Rational(2))));
    auto r7 = symmetric_row(genus(ds.classes.get("7AB"), Rational(3)), 1);
    CHECK(r7 == std::array<Rational, 4>{0, -1, 5, -8});
    auto r4c = symmetric_row(genus(ds.classes.get("4C"), Rational(3)), 2);
    CHECK(r4c == std::array<Rational, 4>{2, -8, 14, -16});
    auto r6a = symmetric_row(genus(ds.classes.get("6A"), Rational(3)), 1);
    CHECK(r6a == std::array<Rational, 4>{0, -2, 6, -8});
    auto r1a = symmetric_row(g1, 2);
    CHECK(r1a == std::array<Rational, 4>{2, 216, -1026, 1616});
  }

  TEST_CASE("weak Jacobi structure of every genus") {
    for (const auto& rec : ds.classes.records()) {
      QJacobi g = genus(rec, Rational(4));
      CHECK(g.coeff(Rational(0), Rational(1)) == 2);
      CHECK(g.coeff(Rational(0), Rational(-1)) == 2);
      CHECK(g.coeff(Rational(0), Rational(0)) == rec.chi() - 4);
      for (const auto& [n, row] : g.rows()) {
        CHECK(n >= 0);
        for (const auto& [r, c] : row) {
          long r0 = mod(r, 2);
          long m2 = (4 * n - r * r + r0 * r0) / 4;
          CHECK(g.coeff(Rational(m2), Rational(r0)) == c);
        }
      }
    }
  }

  TEST_CASE("recovered T~ coefficients") {
    const auto& a = ds.appendix_a.at("3B");
    auto t = recover_ttilde_coeffs(0, a.phi_rows, 0);
    CHECK(t.at(0) == 2);
    auto z = recover_ttilde_coeffs(24, ds.appendix_a.at("1A").phi_rows, 2);
    for (const auto& x : z) CHECK(x == 0);
    for (const auto& rec : ds.classes.records()) {
      auto row = ds.appendix_a.at(rec.name).phi_rows;
      auto tt = recover_ttilde_coeffs(rec.chi(), row, 2);
      QSeries s = ttilde_series(rec, Rational(3));
      for (long k = 0; k < 3; ++k) CHECK(s.coeff(Rational(k)) == tt.at(k));
    }
  }

  TEST_CASE("tampered rows are rejected") {
    PPTable tab = ds.appendix_a.at("6A");
    tab.phi_rows.at(1)[3] += 1;
    CHECK_FALSE(validate_against_appendixA(ds.classes.get("6A"), tab).empty());
  }
}
