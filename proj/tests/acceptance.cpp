// One PASS/FAIL line per acceptance criterion.
#include <cstdio>
#include <string>
#include <vector>

#include "m24/verify.hpp"

int main() {
  using namespace m24;
  const std::vector<std::pair<int, std::string>> criteria = {
      {1, "appendix-a"}, {2, "appendix-b"}, {3, "weights"},  {4, "weyl"},
      {5, "classification"}, {6, "forms"}, {7, "leading"}, {8, "duality"},
      {9, "pullback"},   {10, "additive-lift"}, {11, "eguchi-hikami"}, {12, "anchors"}};
  Cache cache = Cache::from_env();
  VerifyOptions opt;
  opt.cache = &cache;
  bool all = true;
  for (const auto& [n, suite] : criteria) {
    VerificationReport r = run_verify(shipped_data(), suite, opt);
    size_t failed = 0;
    for (const auto& c : r.checks) failed += !c.pass;
    bool ok = r.pass() && !r.checks.empty();
    all = all && ok;
    std::printf("criterion %2d %-15s %s (%zu checks, %zu failed)\n", n, suite.c_str(), ok ? "PASS" : "FAIL",
                r.checks.size(), failed);
    for (const auto& c : r.checks)
      if (!c.pass)
        std::printf("    %s %s: expected %s, got %s\n", c.name.c_str(), c.cls.c_str(), c.expected.c_str(),
                    c.actual.c_str());
  }
  return all ? 0 : 1;
}
