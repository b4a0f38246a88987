#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>

#include "doctest.h"
#include "m24/borcherds.hpp"
#include "m24/cache.hpp"
#include "m24/genera.hpp"
#include "m24/json_io.hpp"
#include "m24/verify.hpp"

using namespace m24;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  fs::path p = fs::temp_directory_path() / ("m24-test-" + tag + "-" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path copy_data(const std::string& tag) {
  fs::path p = fresh_dir(tag);
  for (const char* f : {"classes.toml", "ttilde.toml", "appendix_a.toml", "appendix_b.toml"})
    fs::copy_file(fs::path(shipped_data().dir) / f, p / f);
  return p;
}

void replace_in(const fs::path& file, const std::string& from, const std::string& to) {
  std::string s = read_file(file.string());
  auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  s.replace(pos, from.size(), to);
  std::ofstream(file) << s;
}

}  // namespace

TEST_SUITE("cli_app") {
  TEST_CASE("ingest of the shipped data") {
    const DataSet& ds = shipped_data();
    CHECK(ds.classes.records().size() == 21);
    CHECK(ds.appendix_a.size() == 21);
    CHECK(ds.appendix_b.size() == 2);
    CHECK(ds.content_hash.size() == 64);
    const PPTable& b4 = ds.appendix_b.at("4C");
    bool found = false;
    for (const auto& t : b4.terms)
      if (t.coeff == 4 && t.exponent == make_q(-1, 16) && t.sum == PPTerm::Sum::Units && t.modulus == 16) found = true;
    CHECK(found);
  }

  TEST_CASE("tampered and malformed data are rejected") {
    fs::path d = copy_data("tamper");
    replace_in(d / "appendix_a.toml", "phi = [[0, 0, 2, 20], [0, 20, -128, 216]", "phi = [[0, 0, 2, 20], [0, 20, -127, 216]");
    DataSet bad = ingest(d.string());
    auto errs = validate_dataset(bad);
    REQUIRE_FALSE(errs.empty());
    CHECK(errs.front().find("1A") != std::string::npos);

    fs::path e = copy_data("malformed");
    replace_in(e / "appendix_a.toml", "exp = \"-1/4\"", "exp = \"-1/x\"");
    CHECK_THROWS_AS(ingest(e.string()), DataError);
    try {
      ingest(e.string());
    } catch (const DataError& err) {
      CHECK(std::string(err.what()).find("appendix_a.toml") != std::string::npos);
    }
    fs::remove_all(d);
    fs::remove_all(e);
  }

  TEST_CASE("rational and series JSON round trip") {
    for (const char* s : {"0", "-7/3", "1/144", "12"}) CHECK(rational_from_json(rational_json(parse_rational(s))) == parse_rational(s));
    CSeries x = to_cyclotomic(QSeries::monomial(make_q(-1, 4), Rational(3), Rational(2)));
    x += CSeries::monomial(make_q(1, 2), Cyclotomic::root(3, 8), Rational(2));
    CHECK(cseries_from_json(series_json(x)) == x);
  }

  TEST_CASE("principal part JSON round trip and byte stability") {
    ClassPP a = genus_principal_part(shipped_data(), "3B");
    Json j = principal_part_json(a.pp, a.constant, 9);
    Rational c;
    CHECK(principal_part_from_json(j, c) == a.pp);
    CHECK(c == a.constant);
    ClassPP b = genus_principal_part(shipped_data(), "3B");
    CHECK(dump(principal_part_json(b.pp, b.constant, 9)) == dump(j));
    LiftInput in = genus_lift_input(shipped_data().classes, "2A", 12);
    CHECK(dump(fj_expansion_json(borcherds_product(in, ProductMode::Product, 2, 2))) ==
          dump(fj_expansion_json(borcherds_product(in, ProductMode::Product, 2, 2))));
  }

  TEST_CASE("cache hit, miss and corrupt entries") {
    fs::path dir = fresh_dir("cache");
    Cache cache(dir.string());
    int runs = 0;
    bool hit = true;
    auto producer = [&] {
      ++runs;
      return std::string("value-") + std::to_string(runs);
    };
    CHECK(cache.get_or_compute("k1", producer, &hit) == "value-1");
    CHECK_FALSE(hit);
    CHECK(cache.get_or_compute("k1", producer, &hit) == "value-1");
    CHECK(hit);
    CHECK(runs == 1);
    CHECK(cache.get_or_compute("k2", producer, &hit) == "value-2");
    CHECK_FALSE(hit);
    for (const auto& f : fs::directory_iterator(dir)) {
      if (!f.is_regular_file()) continue;
      std::ofstream(f.path(), std::ios::trunc) << "garbage";
    }
    CHECK(cache.get_or_compute("k1", producer, &hit) == "value-3");
    CHECK_FALSE(hit);
    Cache off(std::nullopt);
    CHECK_FALSE(off.enabled());
    CHECK(off.get_or_compute("k1", producer) == "value-4");
    fs::remove_all(dir);
  }

  TEST_CASE("concurrent producers compute once") {
    fs::path dir = fresh_dir("race");
    Cache cache(dir.string());
    std::atomic<int> runs{0};
    std::vector<std::string> got(4);
    std::vector<std::thread> th;
    for (int i = 0; i < 4; ++i)
      th.emplace_back([&, i] {
        got[i] = cache.get_or_compute("shared", [&] {
          ++runs;
          std::this_thread::sleep_for(std::chrono::milliseconds(50));
          return std::string("v") + std::to_string(runs.load());
        });
      });
    for (auto& t : th) t.join();
    CHECK(runs == 1);
    for (const auto& g : got) CHECK(g == got[0]);
    fs::remove_all(dir);
  }

  TEST_CASE("verify subsets") {
    VerifyOptions opt;
    opt.classes = {"2A", "3B"};
    VerificationReport r = run_verify(shipped_data(), "weights", opt);
    REQUIRE(r.checks.size() == 2);
    CHECK(r.pass());
    CHECK(r.checks[0].cls == "2A");
    Json j = r.json();
    CHECK(j["overall"] == "PASS");
    CHECK(r.text().find("3B") != std::string::npos);
    CHECK_THROWS(run_verify(shipped_data(), "nonsense", opt));
    std::vector<int> seen(50, 0);
    parallel_for(50, 3, [&](size_t i) { seen[i] = int(i); });
    for (int i = 0; i < 50; ++i) CHECK(seen[i] == i);
  }
}
