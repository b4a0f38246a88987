#include "doctest.h"
#include "m24/blocks.hpp"
#include "m24/weil.hpp"
#include "numeric.hpp"

using namespace m24;

namespace {

const DataSet& ds() { return shipped_data(); }

VVForm genus_form(const std::string& cls, const Rational& T = Rational(1), const JmapOptions& opt = {}) {
  return jmap(genus_jfamily(ds().classes, cls), T, opt);
}

}  // namespace

TEST_SUITE("weil_lift") {
  TEST_CASE("discriminant form") {
    CHECK(disc_Q({0, 1, 0}, 1) == make_q(1, 4));
    CHECK(disc_Q({1, 1, 7}, 9) == make_q(1, 36));
    CHECK(disc_Q({2, 0, 3}, 6) == 0);
  }

  TEST_CASE("principal parts of small classes") {
    VVForm F = genus_form("1A");
    CHECK(constant_term(F) == 20);
    PrincipalPart want{{{{0, 1, 0}, make_q(-1, 4)}, Rational(2)}};
    CHECK(principal_part(F) == want);

    VVForm G = genus_form("2B");
    CHECK(constant_term(G) == 8);
    PrincipalPart want2{{{{0, 1, 0}, make_q(-1, 4)}, Rational(2)}, {{{2, 1, 2}, make_q(-1, 4)}, Rational(2)}};
    CHECK(principal_part(G) == want2);

    VVForm H = genus_form("3B");
    PrincipalPart pp = principal_part(H);
    for (long a : units_mod(9)) {
      DiscElement e{a, 1, mod(-2 * inverse_mod(a, 9), 9)};
      CHECK(pp.at({e, make_q(-1, 36)}) == -6);
    }
  }

  TEST_CASE("constant terms give the weight") {
    CHECK(constant_term(genus_form("23AB")) == -2);
    CHECK(constant_term(genus_form("12B")) == -2);
  }

  TEST_CASE("table comparison for a matching class") {
    VVForm F = genus_form("7AB");
    CHECK(compare_with_table(principal_part(F), constant_term(F), ds().appendix_a.at("7AB"), 7).empty());
    PrincipalPart bad = principal_part(F);
    bad.begin()->second += 1;
    CHECK_FALSE(compare_with_table(bad, constant_term(F), ds().appendix_a.at("7AB"), 7).empty());
  }

  TEST_CASE("unit symmetry") {
    VVForm F = genus_form("3B");
    CHECK(symmetry_check(F));
    VVForm bad = F;
    std::swap(bad.comps.at({1, 1, 7}), bad.comps.at({1, 0, 7}));
    CHECK_FALSE(symmetry_check(bad));
  }

  TEST_CASE("choice of matrices, batching and summation order do not matter") {
    for (const char* c : {"6A", "8A", "4C"}) {
      VVForm a = genus_form(c, Rational(2));
      JmapOptions o1;
      o1.batch = false;
      o1.rule = 1;
      JmapOptions o2;
      o2.reverse = true;
      VVForm b = genus_form(c, Rational(2), o1);
      VVForm d = genus_form(c, Rational(2), o2);
      for (const auto& [g, s] : a.comps) {
        CHECK(s.agrees_with(b.at(g)));
        CHECK(s == d.at(g));
      }
    }
  }

  TEST_CASE("theta decomposition") {
    auto h = theta_decompose(phi_m2_1(Rational(4)));
    CHECK(h.at(0).coeff(Rational(0)) == -2);
    CHECK(h.at(0).coeff(Rational(1)) == -12);
    CHECK(h.at(1).coeff(make_q(-1, 4)) == 1);
    CHECK(h.at(1).coeff(make_q(3, 4)) == 8);
    auto k = theta_decompose(phi_0_1(Rational(4)));
    CHECK(k.at(0).coeff(Rational(0)) == 10);
    CHECK(k.at(0).coeff(Rational(1)) == 108);
    CHECK(k.at(0).coeff(Rational(2)) == 808);
    CHECK(k.at(0).coeff(Rational(3)) == 4016);
    CHECK(k.at(1).coeff(make_q(-1, 4)) == 1);
    CHECK(k.at(1).coeff(make_q(3, 4)) == -64);
    CHECK(k.at(1).coeff(make_q(7, 4)) == -513);
    CHECK(k.at(1).coeff(make_q(11, 4)) == -2752);
  }

  TEST_CASE("theta route agrees with the direct route") {
    const ClassRecord& rec = ds().classes.get("3B");
    VVForm a = jmap_theta_route(rec, Rational(1));
    VVForm b = jmap(eta_phi_jfamily(rec), Rational(1));
    for (const auto& [g, s] : b.comps) CHECK(s.agrees_with(a.at(g)));
    VVForm one = jmap_theta_route(ds().classes.get("1A"), Rational(1));
    CHECK(principal_part(one).empty());
  }

  TEST_CASE("numerical S transformation of the vector-valued form") {
    using namespace numeric;
    for (const char* c : {"3B", "6B"}) {
      VVForm F = genus_form(c, Rational(5));
      long N = F.N;
      cd tau(0.11, 1.15), stau = -1.0 / tau;
      std::map<DiscElement, cd> v0, v1;
      for (const auto& [g, s] : F.comps) {
        v0[g] = eval(s, tau);
        v1[g] = eval(s, stau);
      }
      double worst = 0;
      for (const auto& [x, val] : v1) {
        cd acc = 0;
        for (const auto& [y, f] : v0) acc += ex(double(x.x * y.y + x.y * y.x) / N + double(x.r * y.r) / 2.0) * f;
        acc *= ex(1.0 / 8) * std::pow(tau, F.weight.get_d()) / std::sqrt(2.0 * N * N);
        worst = std::max(worst, std::abs(val - acc));
      }
      INFO(c);
      CHECK(worst < 1e-6);
    }
  }
}
