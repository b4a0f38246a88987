#include "doctest.h"
#include "m24/borcherds.hpp"
#include "m24/genera.hpp"
#include "m24/weil.hpp"

using namespace m24;

namespace {

const DataSet& ds() { return shipped_data(); }

}  // namespace

TEST_SUITE("borcherds_lifts") {
  TEST_CASE("Hecke operators") {
    QJacobi f = eta_phi(ds().classes.get("1A"), 8);
    QJacobi t1 = hecke_Tm(f, 1, 1, 10, DirichletChar{}, 4);
    CHECK(t1.agrees_with(f.truncated(Rational(5))));
    QJacobi t2 = hecke_Tm(f, 2, 1, 10, DirichletChar{}, 3);
    CHECK(t2.coeff(Rational(2), Rational(0)) == f.coeff(Rational(4), Rational(0)) + 512 * f.coeff(Rational(1), Rational(0)));
    CHECK(t2.index == 2);
    QJacobi f3 = correction_input(ds(), "3B", 4);
    CHECK(hecke_T0(f3, 9, 0, DirichletChar{}, 3).rows().empty());
    CHECK(hecke_T0(correction_input(ds(), "4C", 4), 16, 0, DirichletChar{}, 3).rows().empty());
    CHECK_THROWS(hecke_T0(genus(ds().classes.get("2A"), Rational(3)), 2, 0, DirichletChar{}, 2));
  }

  TEST_CASE("characters") {
    CHECK(eta_character(ds().classes.get("1A")).D == 1);
    CHECK(eta_character(ds().classes.get("4B")).D == -1024);
    CHECK(eta_character(ds().classes.get("7AB")).D == -343);
  }

  TEST_CASE("multiplicities, Weyl vector and weight") {
    LiftInput in = genus_lift_input(ds().classes, "2A", 2);
    CHECK(mult_d(in, 1, 0, 0) == 4);
    CHECK(mult_d(in, 2, 0, 0) == 8);
    CHECK(product_weight(in) == 6);
    for (const auto& rec : ds().classes.records()) {
      LiftInput x = genus_lift_input(ds().classes, rec.name, 1);
      CHECK(weyl_vector(x) == WeylVector{1, 1, 1});
      CHECK(product_weight(x) == rec.weight());
      for (long d : divisors(rec.level)) CHECK(mult_d(x, d, 0, 1) == (d == 1 ? 2 : 0));
    }
  }

  TEST_CASE("duality constant") {
    LiftInput s;
    s.N = 1;
    QJacobi f(1, 1, Rational(1));
    f.add(-1, 0, 1);
    s.phi[1] = f;
    CHECK(duality_D0(s) == 1);
    LiftInput t;
    t.N = 2;
    QJacobi g(1, 1, Rational(1));
    g.add(-1, 0, 2);
    t.phi[1] = g;
    CHECK(duality_D0(t) == 1);
    CHECK(duality_D0(genus_lift_input(ds().classes, "12B", 1)) == 0);
  }

  TEST_CASE("Siegel series arithmetic") {
    SiegelSeries x(4, 4);
    x.add(1, 0, 0, 1);
    SiegelSeries e = x.exp();
    CHECK(e.coeff(3, 0, 0) == make_q(1, 6));
    SiegelSeries y(4, 4);
    y.add(0, 0, 0, 1);
    y.add(1, 1, 1, -1);
    SiegelSeries L(4, 4);
    for (long a = 1; a <= 4; ++a) L.add(a, a, a, make_q(-1, a));
    CHECK(L.exp() == y);
    SiegelSeries p = x * y;
    CHECK(p.qmax() == 4);
    CHECK(p.coeff(2, 1, 1) == -1);
  }

  TEST_CASE("the three product forms agree for 1A and 4C") {
    for (const char* c : {"1A", "4C"}) {
      LiftInput in = genus_lift_input(ds().classes, c, 20);
      auto P = borcherds_product(in, ProductMode::Product, 3, 3);
      CHECK(P.series == borcherds_product(in, ProductMode::FJ, 3, 3).series);
      CHECK(P.series == borcherds_product(in, ProductMode::Exp, 3, 3).series);
      CHECK(P.coefficient(1).agrees_with(eta_phi(ds().classes.get(c), 3)));
    }
    CHECK(parse_mode("fj") == ProductMode::FJ);
    CHECK_THROWS(parse_mode("sum"));
  }

  TEST_CASE("Igusa form as additive lift and its quasi-pullback") {
    const ClassRecord& rec = ds().classes.get("1A");
    auto P = borcherds_product(genus_lift_input(ds().classes, "1A", 20), ProductMode::Product, 3, 3);
    auto G = gritsenko_lift(eta_phi(rec, 10), 1, 10, DirichletChar{}, 3, 3);
    CHECK(P.series == G.series);
    for (const auto& [nm, row] : G.series.rows())
      for (const auto& [r, c] : row) CHECK(G.series.coeff(nm.second, r, nm.first) == c);
    auto pb = quasi_pullback(P);
    CHECK(pb.at({1, 1}) == 1);
    CHECK(pb.at({1, 2}) == -24);
    CHECK(pb.at({2, 1}) == -24);
    CHECK(pb.at({1, 3}) == 252);
    CHECK(pb.at({2, 2}) == 576);
  }

  TEST_CASE("correction identity for 3B") {
    const ClassRecord& rec = ds().classes.get("3B");
    auto P = borcherds_product(genus_lift_input(ds().classes, "3B", 20), ProductMode::Product, 2, 2);
    auto B = weight_zero_exp_lift(correction_input(ds(), "3B", 6), 9, 2, 2);
    auto G = gritsenko_lift(eta_phi(rec, 6), 9, 2, eta_character(rec), 2, 2);
    CHECK(P.series * B.series == G.series);
    CHECK_FALSE(P.series == G.series);
  }

  TEST_CASE("divisors") {
    auto pp1 = principal_part(jmap(genus_jfamily(ds().classes, "1A"), Rational(1)));
    auto d1 = divisors(pp1, 1, Rational(10));
    REQUIRE(d1.size() == 1);
    CHECK(d1[0].delta == make_q(1, 4));
    CHECK(d1[0].multiplicity == 2);

    auto pp3 = principal_part(jmap(genus_jfamily(ds().classes, "3B"), Rational(1)));
    auto d3 = divisors(pp3, 9, Rational(10));
    REQUIRE(!d3.empty());
    CHECK(d3[0].delta == make_q(1, 36));
    CHECK(d3[0].multiplicity == -6);
    for (const auto& h : d3) CHECK(h.delta == make_q(h.a * h.b, 9) - h.n * h.m + make_q(h.r * h.r, 4));

    auto pp2 = principal_part(jmap(genus_jfamily(ds().classes, "2B"), Rational(1)));
    auto d2 = divisors(pp2, 4, Rational(10));
    REQUIRE(d2.size() == 2);
    for (const auto& h : d2) {
      CHECK(h.delta == make_q(1, 4));
      CHECK(h.multiplicity == 2);
    }
  }
}
