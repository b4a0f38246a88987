#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "m24/borcherds.hpp"
#include "m24/cache.hpp"
#include "m24/cusp.hpp"
#include "m24/data.hpp"
#include "m24/genera.hpp"
#include "m24/json_io.hpp"
#include "m24/verify.hpp"
#include "m24/weil.hpp"

using namespace m24;

namespace {

struct Common {
  std::string json_path;  // "-" for stdout
  std::string data_dir;
};

const DataSet& load(const Common& c) {
  static DataSet custom;
  if (c.data_dir.empty()) return shipped_data();
  custom = ingest(c.data_dir);
  return custom;
}

void emit(const Common& c, const Json& j, const std::string& text) {
  if (c.json_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::string s = dump(j);
  if (c.json_path == "-") {
    std::cout << s;
    return;
  }
  std::ofstream out(c.json_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + c.json_path);
  out << s;
  std::cout << text;
  if (!text.empty() && text.back() != '\n') std::cout << "\n";
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--json", c.json_path, "Write JSON to this file ('-' for stdout)");
  app->add_option("--data", c.data_dir, "Data directory (default: shipped data)");
}

Json classes_json(const ClassTable& t) {
  Json arr = Json::array();
  for (const auto& rec : t.records()) {
    Json shape = Json::array();
    for (auto [k, b] : rec.shape) shape.push_back({k, b});
    arr.push_back({{"name", rec.name},
                   {"shape", shape},
                   {"order", rec.order},
                   {"level", rec.level},
                   {"chi", rec.chi()},
                   {"weight", rational_json(rec.weight())},
                   {"eta_product", rec.eta_product().str()}});
  }
  return arr;
}

std::string classes_text(const ClassTable& t) {
  std::ostringstream os;
  os << "class  shape                 order level chi weight\n";
  for (const auto& rec : t.records()) {
    os << rec.name << std::string(7 - std::min<size_t>(6, rec.name.size()), ' ') << shape_str(rec.shape);
    os << std::string(22 - std::min<size_t>(21, shape_str(rec.shape).size()), ' ') << rec.order << "     " << rec.level
       << "    " << rec.chi() << "   " << rec.weight().get_str() << "\n";
  }
  return os.str();
}

// Named building blocks: eta, theta, phi-2,1, phi0,1, E2, E2N (with --level), or a class name for eta_g.
Json block_json(const DataSet& ds, const std::string& name, const Rational& T, long level, std::string& text) {
  if (name == "eta" || name == "E2" || name == "E2N" || ds.classes.contains(name)) {
    QSeries s = name == "eta"  ? eta_series(1, T)
                : name == "E2" ? e2_series(T)
                : name == "E2N"
                    ? e2n_series(level, 1, T)
                    : eta_quotient_series(ds.classes.get(name).eta_product(), T);
    text = s.str();
    return series_json(s);
  }
  QJacobi f;
  if (name == "theta")
    f = theta_series(T);
  else if (name == "phi-2,1")
    f = phi_m2_1(T);
  else if (name == "phi0,1")
    f = phi_0_1(T);
  else
    throw std::invalid_argument("unknown block " + name + " (eta, theta, phi-2,1, phi0,1, E2, E2N, or a class)");
  text = f.str();
  return jacobi_json(f);
}

JFamily family_for(const DataSet& ds, const std::string& cls, const std::string& input) {
  if (input == "genus") return genus_jfamily(ds.classes, cls);
  if (input == "eta") return eta_phi_jfamily(ds.classes.get(cls));
  if (input == "correction") return appendix_b_jfamily(ds, cls);
  throw std::invalid_argument("unknown input " + input + " (genus, eta, correction)");
}

std::string humbert_text(const std::vector<HumbertEntry>& d) {
  std::ostringstream os;
  os << "(a, n, r, m, b)  delta  multiplicity  orbit size\n";
  for (const auto& h : d)
    os << "(" << h.a << ", " << h.n << ", " << h.r << ", " << h.m << ", " << h.b << ")  " << h.delta.get_str() << "  "
       << h.multiplicity.get_str() << "  " << h.count << "\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computation of the Mathieu moonshine Siegel modular forms"};
  app.require_subcommand(1);
  Common common;
  Cache cache = Cache::from_env();

  auto* classes = app.add_subcommand("classes", "List the conjugacy classes");
  add_common(classes, common);

  auto* blocks = app.add_subcommand("blocks", "Expand a building block");
  std::string block_name;
  long order = 3, level = 2;
  blocks->add_option("name", block_name, "eta, theta, phi-2,1, phi0,1, E2, E2N or a class (eta_g)")->required();
  blocks->add_option("--order", order, "Expand below q^order");
  blocks->add_option("--level", level, "Level N for E2N");
  add_common(blocks, common);

  auto* genus_cmd = app.add_subcommand("genus", "Twisted elliptic genus of a class");
  std::string cls;
  genus_cmd->add_option("class", cls)->required();
  genus_cmd->add_option("--order", order, "Expand below q^order");
  add_common(genus_cmd, common);

  auto* cusp = app.add_subcommand("cusp", "Expansion of the genus and eta product under a matrix");
  std::string matrix = "0,-1,1,0", order_text = "1";
  long cusp_d = 1;
  cusp->add_option("class", cls)->required();
  cusp->add_option("d", cusp_d, "Family member phi_{g^d}, d | N_g");
  cusp->add_option("--matrix", matrix, "a,b,c,d in SL2(Z)");
  cusp->add_option("--order", order_text, "Expand below q^order (rational)");
  add_common(cusp, common);

  auto* jm = app.add_subcommand("jmap", "Principal part of the vector-valued image");
  std::string input = "genus";
  bool theta_route = false;
  jm->add_option("class", cls)->required();
  jm->add_option("--input", input, "genus, eta (eta_g phi_{-2,1}) or correction");
  jm->add_flag("--theta-route", theta_route, "Use the theta decomposition route (eta input)");
  add_common(jm, common);

  auto* grit = app.add_subcommand("gritsenko", "Additive lift of eta_g phi_{-2,1}");
  long qmax = 3, smax = 3;
  grit->add_option("class", cls)->required();
  grit->add_option("--qmax", qmax);
  grit->add_option("--smax", smax);
  add_common(grit, common);

  auto* bor = app.add_subcommand("borcherds", "Borcherds product of the genus family");
  std::string mode = "product";
  bor->add_option("class", cls)->required();
  bor->add_option("--mode", mode, "product, fj or exp");
  bor->add_option("--qmax", qmax);
  bor->add_option("--smax", smax);
  add_common(bor, common);

  auto* divs = app.add_subcommand("divisors", "Humbert surfaces in the divisor of the product");
  std::string dmax = "1";
  divs->add_option("class", cls)->required();
  divs->add_option("--dmax", dmax, "Largest discriminant (rational)");
  add_common(divs, common);

  auto* ver = app.add_subcommand("verify", "Run verification suites");
  std::string suite = "all";
  std::vector<std::string> only;
  unsigned jobs = 0;
  std::string report_path;
  ver->add_option("suite", suite, "all or one of the suites")->check(CLI::IsMember([] {
    auto s = suite_names();
    s.push_back("all");
    return s;
  }()));
  ver->add_option("--class", only, "Restrict to these classes");
  ver->add_option("--jobs", jobs, "Worker threads (0: all cores)");
  ver->add_option("--report", report_path, "Write the human-readable report to this file");
  add_common(ver, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    const DataSet& ds = load(common);
    if (*classes) {
      emit(common, classes_json(ds.classes), classes_text(ds.classes));
    } else if (*blocks) {
      std::string text;
      Json j = block_json(ds, block_name, Rational(order), level, text);
      emit(common, j, text);
    } else if (*genus_cmd) {
      QJacobi f = genus(ds.classes.get(cls), Rational(order));
      emit(common, jacobi_json(f), f.str());
    } else if (*cusp) {
      auto fam = ds.classes.family(cls);
      if (!fam.count(cusp_d)) throw std::invalid_argument(std::to_string(cusp_d) + " does not divide the level of " + cls);
      const ClassRecord& rec = ds.classes.get(fam.at(cusp_d));
      SL2 A = parse_sl2(matrix);
      Rational T = parse_rational(order_text);
      CJacobi g = genus_at_cusp(rec, A, T);
      CSeries e = eta_quotient_at_cusp(rec.eta_product(), A, T);
      Json j{{"class", cls}, {"d", cusp_d}, {"member", rec.name}, {"matrix", A.str()}, {"genus", jacobi_json(g)}, {"eta_product", series_json(e)}};
      emit(common, j, "genus: " + g.str() + "\neta product: " + e.str());
    } else if (*jm) {
      if (theta_route && input != "genus" && input != "eta")
        throw std::invalid_argument("--theta-route applies to the eta input");
      std::string route = theta_route ? "theta" : "jacobi";
      std::string in = theta_route ? "eta" : input;
      std::string key = "jmap|" + cls + "|" + in + "|" + route + "|T=1|" + ds.content_hash;
      bool hit = false;
      std::string stored = cache.get_or_compute(key, [&] {
        VVForm F = theta_route ? jmap_theta_route(ds.classes.get(cls), Rational(1))
                               : jmap(family_for(ds, cls, in), Rational(1));
        return dump(principal_part_json(principal_part(F), constant_term(F), F.N));
      }, &hit);
      Json j = Json::parse(stored);
      Rational c;
      PrincipalPart pp = principal_part_from_json(j, c);
      std::string text = format_pp(pp, c, j.at("level").get<long>());
      if (hit) std::cerr << "served from cache\n";
      emit(common, j, text);
    } else if (*grit) {
      const ClassRecord& rec = ds.classes.get(cls);
      if (rec.weight() < 1) throw std::invalid_argument("the additive lift needs weight >= 1; " + cls + " has weight " + rec.weight().get_str());
      long k = to_long(Integer(rec.weight().get_num()));
      FJExpansion G = gritsenko_lift(eta_phi(rec, qmax * smax + 1), rec.level, k, eta_character(rec), qmax, smax, cls);
      emit(common, fj_expansion_json(G), G.series.str());
    } else if (*bor) {
      ProductMode m = parse_mode(mode);
      std::string key = "borcherds|" + cls + "|" + mode_name(m) + "|" + std::to_string(qmax) + "," + std::to_string(smax) +
                        "|" + ds.content_hash;
      bool hit = false;
      std::string stored = cache.get_or_compute(key, [&] {
        LiftInput in = genus_lift_input(ds.classes, cls, (qmax + 1) * (smax + 1) + 1);
        return dump(fj_expansion_json(borcherds_product(in, m, qmax, smax)));
      }, &hit);
      if (hit) std::cerr << "served from cache\n";
      Json j = Json::parse(stored);
      std::ostringstream os;
      os << "Weyl vector (" << j["weyl"][0].get<std::string>() << ", " << j["weyl"][1].get<std::string>() << ", "
         << j["weyl"][2].get<std::string>() << "), weight " << j["weight"].get<std::string>() << "\n";
      for (const auto& t : j["series"]["terms"])
        os << "c(" << t[0] << ", " << t[1] << ", " << t[2] << ") = " << t[3].get<std::string>() << "\n";
      os << "known for n <= " << qmax << ", m <= " << smax;
      emit(common, j, os.str());
    } else if (*divs) {
      const ClassRecord& rec = ds.classes.get(cls);
      ClassPP c = genus_principal_part(ds, cls, &cache);
      auto d = divisors(c.pp, rec.level, parse_rational(dmax));
      emit(common, humbert_json(d, rec.level), humbert_text(d));
    } else if (*ver) {
      VerifyOptions opt;
      opt.classes = only;
      opt.jobs = jobs;
      opt.cache = &cache;
      VerificationReport rep = run_verify(ds, suite, opt);
      std::string text = rep.text();
      if (!report_path.empty()) {
        std::ofstream out(report_path);
        out << text;
      }
      emit(common, rep.json(), text);
      return rep.pass() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
