#pragma once

#include <functional>
#include <string>
#include <vector>

#include "m24/cache.hpp"
#include "m24/data.hpp"
#include "m24/json_io.hpp"
#include "m24/weil.hpp"

namespace m24 {

struct CheckRecord {
  std::string name;
  std::string cls;  // empty for checks not tied to one class
  bool pass = false;
  std::string expected, actual;
  long runtime_ms = 0;
};

struct VerificationReport {
  std::vector<CheckRecord> checks;
  bool pass() const;
  Json json() const;
  std::string text() const;
};

struct VerifyOptions {
  std::vector<std::string> classes;  // empty: every class
  unsigned jobs = 0;                 // 0: hardware concurrency
  Cache* cache = nullptr;
};

// Suites: appendix-a, appendix-b, weights, weyl, classification, forms, leading, duality, pullback,
// additive-lift, eguchi-hikami, anchors, and all (every suite in that order).
std::vector<std::string> suite_names();
VerificationReport run_verify(const DataSet& ds, const std::string& suite, const VerifyOptions& opt = {});

// Principal part and constant of the genus family of a class, through the cache when given.
struct ClassPP {
  PrincipalPart pp;
  Rational constant;
};
ClassPP genus_principal_part(const DataSet& ds, const std::string& cls, Cache* cache = nullptr);

// Runs fn(i) for i in [0, n) on up to jobs threads; results keep index order.
void parallel_for(size_t n, unsigned jobs, const std::function<void(size_t)>& fn);

}  // namespace m24
