#include "doctest.h"
#include "m24/classes.hpp"
#include "m24/data.hpp"

using namespace m24;

TEST_SUITE("m24_classes") {
  const ClassTable& T = shipped_data().classes;

  TEST_CASE("table") {
    CHECK(T.records().size() == 21);
    CHECK(T.get("1A").level == 1);
    CHECK(T.get("12B").order == 12);
    CHECK(T.get("12B").level == 144);
    CHECK(T.get("12B").shape == Shape{{12, 2}});
    CHECK(T.get("23AB").shape == Shape{{1, 1}, {23, 1}});
    for (const auto& rec : T.records()) {
      CHECK(shape_degree(rec.shape) == 24);
      CHECK(rec.order == shape_order(rec.shape));
      CHECK(rec.level == shape_level(rec.shape));
      CHECK(rec.chi() == (rec.shape.front().first == 1 ? rec.shape.front().second : 0));
    }
  }

  TEST_CASE("power maps and traces") {
    CHECK(power_shape({{1, 8}, {2, 8}}, 2) == Shape{{1, 24}});
    CHECK(power_shape({{3, 8}}, 3) == Shape{{1, 24}});
    CHECK(power_shape({{2, 4}, {4, 4}}, 2) == Shape{{1, 8}, {2, 8}});
    CHECK(exponents_from_traces({{1, 8}, {2, 24}}) == Shape{{1, 8}, {2, 8}});
    CHECK(exponents_from_traces({{1, 24}}) == Shape{{1, 24}});
    for (long d : {1L, 2L, 3L, 4L, 6L}) CHECK(chi_power({{12, 2}}, d) == 0);
    CHECK(chi_power({{12, 2}}, 12) == 24);
    for (const auto& rec : T.records()) {
      std::map<long, long> tr;
      for (long d : divisors(rec.order)) tr[d] = chi_power(rec.shape, d);
      CHECK(exponents_from_traces(tr) == rec.shape);
      for (long d : divisors(rec.order)) {
        Shape p = power_shape(rec.shape, d);
        CHECK(shape_degree(p) == 24);
        CHECK((rec.level / d) % shape_level(p) == 0);
      }
    }
  }

  TEST_CASE("eta products and weights") {
    CHECK(T.get("1A").weight() == 10);
    CHECK(T.get("2B").weight() == 4);
    CHECK(T.get("2B").eta_product().factors == std::vector<std::pair<long, long>>{{2, 12}});
    CHECK(T.get("23AB").weight() == -1);
    CHECK(T.get("12B").weight() == -1);
  }

  TEST_CASE("families") {
    auto f = T.family("2B");
    CHECK(f.at(1) == "2B");
    CHECK(f.at(2) == "1A");
    CHECK(f.at(4) == "1A");
    auto g = T.family("12B");
    CHECK(g.at(2) == "6B");
    CHECK(g.at(3) == "4C");
    CHECK(g.at(9) == "4C");
    CHECK(g.at(4) == "3B");
    CHECK(g.at(16) == "3B");
    CHECK(g.at(6) == "2B");
    CHECK(g.at(18) == "2B");
    CHECK(g.at(12) == "1A");
    CHECK(g.at(144) == "1A");
  }
}
