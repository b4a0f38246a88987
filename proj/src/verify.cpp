#include "m24/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "m24/borcherds.hpp"
#include "m24/cusp.hpp"
#include "m24/genera.hpp"

namespace m24 {

namespace {

using Clock = std::chrono::steady_clock;

const std::vector<std::string> kSuites = {"appendix-a", "appendix-b",    "weights",       "weyl",
                                          "classification", "forms",   "leading",       "duality",
                                          "pullback",   "additive-lift", "eguchi-hikami", "anchors"};

const std::set<std::string> kHolomorphic = {"1A", "2A", "2B", "3A", "4B"};
const std::set<std::string> kEven = {"1A", "2A", "2B", "3A", "3B", "4A", "4B", "4C", "5A", "6A", "6B", "10A", "11A"};
const std::set<std::string> kAdditive = {"1A", "2A", "2B", "3A", "4A", "4B", "5A", "6A", "7AB", "8A"};

std::string join(const std::set<std::string>& s) {
  std::string out;
  for (const auto& x : s) out += (out.empty() ? "" : ",") + x;
  return out;
}

long whole(const Rational& x) { return to_long(Integer(x.get_num())); }

long form_box(long N) { return N <= 16 ? 3 : 2; }

struct Ctx {
  const DataSet& ds;
  const VerifyOptions& opt;
  std::vector<std::string> classes;
};

// Runs one check per class in parallel; fn fills expected, actual and pass.
void per_class(const Ctx& ctx, const std::string& name, const std::vector<std::string>& classes,
               const std::function<void(const std::string&, CheckRecord&)>& fn, VerificationReport& rep) {
  std::vector<CheckRecord> recs(classes.size());
  parallel_for(classes.size(), ctx.opt.jobs, [&](size_t i) {
    CheckRecord& r = recs[i];
    r.name = name;
    r.cls = classes[i];
    auto t0 = Clock::now();
    try {
      fn(classes[i], r);
    } catch (const std::exception& e) {
      r.pass = false;
      r.actual = std::string("error: ") + e.what();
    }
    r.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
  });
  for (auto& r : recs) rep.checks.push_back(std::move(r));
}

void single(const std::string& name, const std::function<void(CheckRecord&)>& fn, VerificationReport& rep) {
  CheckRecord r;
  r.name = name;
  auto t0 = Clock::now();
  try {
    fn(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.actual = std::string("error: ") + e.what();
  }
  r.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
  rep.checks.push_back(std::move(r));
}

std::vector<std::string> filter(const Ctx& ctx, const std::function<bool(const ClassRecord&)>& keep) {
  std::vector<std::string> out;
  for (const auto& c : ctx.classes)
    if (keep(ctx.ds.classes.get(c))) out.push_back(c);
  return out;
}

FJExpansion product_of(const DataSet& ds, const std::string& cls, ProductMode mode, long qmax, long smax) {
  LiftInput in = genus_lift_input(ds.classes, cls, (qmax + 1) * (smax + 1) + 1);
  return borcherds_product(in, mode, qmax, smax);
}

std::string pp_mismatch_summary(const std::vector<std::string>& msgs) {
  if (msgs.empty()) return "exact match";
  std::string s = std::to_string(msgs.size()) + " mismatches; first: " + msgs.front();
  return s;
}

void suite_appendix_a(const Ctx& ctx, VerificationReport& rep) {
  per_class(ctx, "appendix-a", ctx.classes, [&](const std::string& cls, CheckRecord& r) {
    ClassPP c = genus_principal_part(ctx.ds, cls, ctx.opt.cache);
    auto msgs = compare_with_table(c.pp, c.constant, ctx.ds.appendix_a.at(cls), ctx.ds.classes.get(cls).level);
    r.expected = "table entry";
    r.actual = pp_mismatch_summary(msgs);
    r.pass = msgs.empty();
  }, rep);
}

void suite_appendix_b(const Ctx& ctx, VerificationReport& rep) {
  std::vector<std::string> cls;
  for (const auto& c : ctx.classes)
    if (ctx.ds.appendix_b.count(c)) cls.push_back(c);
  per_class(ctx, "appendix-b", cls, [&](const std::string& c, CheckRecord& r) {
    VVForm F = jmap(appendix_b_jfamily(ctx.ds, c), Rational(1));
    auto msgs = compare_with_table(principal_part(F), constant_term(F), ctx.ds.appendix_b.at(c), F.N);
    r.expected = "table entry";
    r.actual = pp_mismatch_summary(msgs);
    r.pass = msgs.empty();
  }, rep);
}

void suite_weights(const Ctx& ctx, VerificationReport& rep) {
  per_class(ctx, "weights", ctx.classes, [&](const std::string& cls, CheckRecord& r) {
    const ClassRecord& rec = ctx.ds.classes.get(cls);
    ClassPP c = genus_principal_part(ctx.ds, cls, ctx.opt.cache);
    Rational w1 = c.constant / 2;
    Rational w2 = product_weight(genus_lift_input(ctx.ds.classes, cls, 1));
    Rational w3 = rec.weight();
    r.expected = w3.get_str();
    r.actual = w1.get_str() + " " + w2.get_str() + " " + w3.get_str();
    r.pass = w1 == w3 && w2 == w3;
  }, rep);
}

void suite_weyl(const Ctx& ctx, VerificationReport& rep) {
  per_class(ctx, "weyl", ctx.classes, [&](const std::string& cls, CheckRecord& r) {
    WeylVector w = weyl_vector(genus_lift_input(ctx.ds.classes, cls, 1));
    r.expected = "(1,1,1)";
    r.actual = "(" + w.A.get_str() + "," + w.B.get_str() + "," + w.C.get_str() + ")";
    r.pass = w == WeylVector{1, 1, 1};
  }, rep);
}

void suite_classification(const Ctx& ctx, VerificationReport& rep) {
  std::vector<char> holo(ctx.classes.size()), even(ctx.classes.size());
  std::vector<std::string> errs(ctx.classes.size());
  parallel_for(ctx.classes.size(), ctx.opt.jobs, [&](size_t i) {
    try {
      const std::string& cls = ctx.classes[i];
      long N = ctx.ds.classes.get(cls).level;
      ClassPP c = genus_principal_part(ctx.ds, cls, ctx.opt.cache);
      bool h = true;
      for (const auto& d : divisors(c.pp, N, Rational(4 * N * N)))
        if (sgn(d.multiplicity) < 0) h = false;
      bool e = true;
      for (const auto& [key, v] : c.pp)
        if (!is_integer(v / 2)) e = false;
      holo[i] = h;
      even[i] = e;
    } catch (const std::exception& e) {
      errs[i] = e.what();
    }
  });
  std::set<std::string> H, E, expH, expE;
  std::string err;
  for (size_t i = 0; i < ctx.classes.size(); ++i) {
    if (!errs[i].empty()) err += ctx.classes[i] + ": " + errs[i] + "; ";
    if (holo[i]) H.insert(ctx.classes[i]);
    if (even[i]) E.insert(ctx.classes[i]);
    if (kHolomorphic.count(ctx.classes[i])) expH.insert(ctx.classes[i]);
    if (kEven.count(ctx.classes[i])) expE.insert(ctx.classes[i]);
  }
  single("classification-holomorphic", [&](CheckRecord& r) {
    r.expected = join(expH);
    r.actual = err.empty() ? join(H) : "error: " + err;
    r.pass = err.empty() && H == expH;
  }, rep);
  single("classification-even", [&](CheckRecord& r) {
    r.expected = join(expE);
    r.actual = err.empty() ? join(E) : "error: " + err;
    r.pass = err.empty() && E == expE;
  }, rep);
}

void suite_forms(const Ctx& ctx, VerificationReport& rep) {
  per_class(ctx, "forms", ctx.classes, [&](const std::string& cls, CheckRecord& r) {
    long N = ctx.ds.classes.get(cls).level;
    std::string got;
    bool ok = true;
    std::vector<long> boxes{2};
    if (form_box(N) == 3) boxes.push_back(3);
    for (long b : boxes) {
      auto P = product_of(ctx.ds, cls, ProductMode::Product, b, b);
      auto F = product_of(ctx.ds, cls, ProductMode::FJ, b, b);
      auto X = product_of(ctx.ds, cls, ProductMode::Exp, b, b);
      bool same = P.series == F.series && P.series == X.series;
      ok = ok && same;
      got += "(" + std::to_string(b) + "," + std::to_string(b) + "): " + (same ? "agree" : "differ") + "; ";
    }
    r.expected = "product = fj = exp";
    r.actual = got;
    r.pass = ok;
  }, rep);
}

void suite_leading(const Ctx& ctx, VerificationReport& rep) {
  per_class(ctx, "leading", ctx.classes, [&](const std::string& cls, CheckRecord& r) {
    const ClassRecord& rec = ctx.ds.classes.get(cls);
    auto P = product_of(ctx.ds, cls, ProductMode::Product, 8, 1);
    QJacobi lead = P.coefficient(1);
    QJacobi want = eta_phi(rec, 8);
    r.expected = "eta_g phi_{-2,1} to q^8";
    bool ok = lead.rows() == want.truncated(Rational(9)).rows() && P.series.fj(0).rows().empty();
    r.actual = ok ? "equal" : "differs";
    r.pass = ok;
  }, rep);
}

void suite_duality(const Ctx& ctx, VerificationReport& rep) {
  per_class(ctx, "duality", ctx.classes, [&](const std::string& cls, CheckRecord& r) {
    long b = form_box(ctx.ds.classes.get(cls).level);
    auto P = product_of(ctx.ds, cls, ProductMode::Product, b, b);
    long bad = 0;
    for (const auto& [nm, row] : P.series.rows())
      for (const auto& [z, c] : row)
        if (P.series.coeff(nm.second, z, nm.first) != c) ++bad;
    Rational D0 = duality_D0(genus_lift_input(ctx.ds.classes, cls, 1));
    r.expected = "D0 = 0, c(n,r,m) = c(m,r,n)";
    r.actual = "D0 = " + D0.get_str() + ", " + std::to_string(bad) + " asymmetric coefficients to (" +
               std::to_string(b) + "," + std::to_string(b) + ")";
    r.pass = sgn(D0) == 0 && bad == 0;
  }, rep);
}

void suite_pullback(const Ctx& ctx, VerificationReport& rep) {
  per_class(ctx, "pullback", ctx.classes, [&](const std::string& cls, CheckRecord& r) {
    const ClassRecord& rec = ctx.ds.classes.get(cls);
    auto P = product_of(ctx.ds, cls, ProductMode::Product, 4, 4);
    auto pb = quasi_pullback(P);
    QSeries e = eta_quotient_series(rec.eta_product(), Rational(5));
    long bad = 0;
    for (long n = 0; n <= 4; ++n)
      for (long m = 0; m <= 4; ++m) {
        auto it = pb.find({n, m});
        Rational got = it == pb.end() ? Rational(0) : it->second;
        if (got != e.coeff(Rational(n)) * e.coeff(Rational(m))) ++bad;
      }
    r.expected = "eta_g(tau) eta_g(omega) to (4,4)";
    r.actual = std::to_string(bad) + " differing coefficients";
    r.pass = bad == 0;
  }, rep);
}

void suite_additive(const Ctx& ctx, VerificationReport& rep) {
  auto cls = filter(ctx, [&](const ClassRecord& rec) {
    return kAdditive.count(rec.name) || (ctx.ds.appendix_b.count(rec.name) && ctx.ds.appendix_b.at(rec.name).input_eta);
  });
  per_class(ctx, "additive-lift", cls, [&](const std::string& c, CheckRecord& r) {
    const ClassRecord& rec = ctx.ds.classes.get(c);
    long k = whole(rec.weight());
    bool corrected = !kAdditive.count(c);
    long s = corrected ? 2 : 3;
    auto P = product_of(ctx.ds, c, ProductMode::Product, s, s);
    auto G = gritsenko_lift(eta_phi(rec, s * s + 1), rec.level, k, eta_character(rec), s, s, c);
    if (!corrected) {
      r.expected = "Phi = G(eta_g phi_{-2,1}) to (3,3)";
      r.pass = P.series == G.series;
    } else {
      auto B = weight_zero_exp_lift(correction_input(ctx.ds, c, s * s + 1), rec.level, s, s);
      SiegelSeries PB = P.series * B.series;
      r.expected = "Phi B(F) = G(eta_g phi_{-2,1}) to (2,2)";
      r.pass = PB.qmax() >= s && PB.smax() >= s && PB.truncated(s, s) == G.series;
    }
    r.actual = r.pass ? "equal" : "differs";
  }, rep);
}

void suite_eguchi_hikami(const Ctx& ctx, VerificationReport& rep) {
  auto cls = filter(ctx, [](const ClassRecord& rec) { return rec.weight() > 0; });
  per_class(ctx, "eguchi-hikami", cls, [&](const std::string& c, CheckRecord& r) {
    const ClassRecord& rec = ctx.ds.classes.get(c);
    QJacobi psi = eta_phi(rec, 6);
    QJacobi lhs = genus(rec, Rational(4)) * psi + hecke_Tm(psi, 2, rec.level, whole(rec.weight()), eta_character(rec), 3) +
                  correction_input(ctx.ds, c, 3) * psi;
    lhs = lhs.truncated(Rational(4));
    r.expected = "0 + O(q^4)";
    bool known = lhs.trunc() && *lhs.trunc() == 4;
    r.actual = known ? std::to_string(lhs.rows().size()) + " nonzero q-rows" : "insufficient truncation";
    r.pass = known && lhs.rows().empty();
  }, rep);
}

void suite_anchors(const Ctx& ctx, VerificationReport& rep) {
  single("anchor-eta3-under-S", [&](CheckRecord& r) {
    EtaQuotient e;
    e.factors = {{3, 8}};
    CSeries s = eta_quotient_at_cusp(e, SL2::S(), Rational(1, 2));
    r.expected = "1/81 q^(1/9) - 8/81 q^(4/9)";
    r.actual = s.str();
    r.pass = s.terms().size() == 2 && s.coeff(make_q(1, 9)) == Cyclotomic(make_q(1, 81)) &&
             s.coeff(make_q(4, 9)) == Cyclotomic(make_q(-8, 81));
  }, rep);
  if (!ctx.ds.classes.contains("3B")) return;
  single("anchor-3B-theta-route", [&](CheckRecord& r) {
    VVForm F = jmap_theta_route(ctx.ds.classes.get("3B"), Rational(1, 2));
    struct Term {
      long r, k;
      Rational e, c;
    };
    // e(a/9, r/2, k a^-1/9)
    std::vector<Term> terms = {{1, -1, make_q(-5, 36), make_q(1, 81)},
                               {0, -1, make_q(1, 9), make_q(-2, 81)},
                               {1, 5, make_q(7, 36), make_q(-8, 81)},
                               {0, 5, make_q(4, 9), make_q(16, 81)}};
    long bad = 0;
    for (const auto& t : terms)
      for (long a : units_mod(9)) {
        DiscElement g{a, t.r, mod(t.k * inverse_mod(a, 9), 9)};
        if (F.at(g).coeff(t.e) != t.c) ++bad;
      }
    r.expected = "four leading orbit sums";
    r.actual = std::to_string(bad) + " differing coefficients";
    r.pass = bad == 0;
  }, rep);
}

}  // namespace

void parallel_for(size_t n, unsigned jobs, const std::function<void(size_t)>& fn) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<size_t>(jobs, n));
  if (jobs <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (size_t i = next++; i < n; i = next++) fn(i);
    });
  for (auto& th : pool) th.join();
}

ClassPP genus_principal_part(const DataSet& ds, const std::string& cls, Cache* cache) {
  auto produce = [&] {
    VVForm F = jmap(genus_jfamily(ds.classes, cls), Rational(1));
    return dump(principal_part_json(principal_part(F), constant_term(F), F.N));
  };
  std::string key = "genus-pp|" + cls + "|T=1|" + ds.content_hash;
  std::string text = cache ? cache->get_or_compute(key, produce) : produce();
  ClassPP out;
  out.pp = principal_part_from_json(Json::parse(text), out.constant);
  return out;
}

bool VerificationReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

Json VerificationReport::json() const {
  Json j;
  j["overall"] = pass() ? "PASS" : "FAIL";
  Json arr = Json::array();
  for (const auto& c : checks)
    arr.push_back({{"name", c.name},
                   {"class", c.cls},
                   {"status", c.pass ? "PASS" : "FAIL"},
                   {"expected", c.expected},
                   {"actual", c.actual},
                   {"runtime_ms", c.runtime_ms}});
  j["checks"] = arr;
  return j;
}

std::string VerificationReport::text() const {
  std::ostringstream os;
  size_t failed = 0;
  for (const auto& c : checks) {
    if (!c.pass) ++failed;
    os << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.cls.empty()) os << " " << c.cls;
    os << ": " << c.actual;
    if (!c.pass) os << " (expected " << c.expected << ")";
    os << " [" << c.runtime_ms << " ms]\n";
  }
  os << (failed ? "FAIL" : "PASS") << ": " << checks.size() - failed << "/" << checks.size() << " checks passed\n";
  return os.str();
}

std::vector<std::string> suite_names() { return kSuites; }

VerificationReport run_verify(const DataSet& ds, const std::string& suite, const VerifyOptions& opt) {
  Ctx ctx{ds, opt, opt.classes};
  if (ctx.classes.empty())
    for (const auto& rec : ds.classes.records()) ctx.classes.push_back(rec.name);
  for (const auto& c : ctx.classes)
    if (!ds.classes.contains(c)) throw std::invalid_argument("unknown class: " + c);
  VerificationReport rep;
  std::vector<std::string> todo;
  if (suite == "all")
    todo = kSuites;
  else if (std::find(kSuites.begin(), kSuites.end(), suite) != kSuites.end())
    todo = {suite};
  else
    throw std::invalid_argument("unknown suite: " + suite);
  for (const auto& s : todo) {
    if (s == "appendix-a") suite_appendix_a(ctx, rep);
    if (s == "appendix-b") suite_appendix_b(ctx, rep);
    if (s == "weights") suite_weights(ctx, rep);
    if (s == "weyl") suite_weyl(ctx, rep);
    if (s == "classification") suite_classification(ctx, rep);
    if (s == "forms") suite_forms(ctx, rep);
    if (s == "leading") suite_leading(ctx, rep);
    if (s == "duality") suite_duality(ctx, rep);
    if (s == "pullback") suite_pullback(ctx, rep);
    if (s == "additive-lift") suite_additive(ctx, rep);
    if (s == "eguchi-hikami") suite_eguchi_hikami(ctx, rep);
    if (s == "anchors") suite_anchors(ctx, rep);
  }
  return rep;
}

}  // namespace m24
