#include "m24/data.hpp"

#include <cctype>
#include <cstdlib>
#include <mutex>
#include <sstream>

#include <tomlplusplus/toml.hpp>

#include "m24/cache.hpp"

#ifndef M24_DEFAULT_DATA_DIR
#define M24_DEFAULT_DATA_DIR "data"
#endif

namespace m24 {

namespace {

std::string where(const std::string& path, const toml::node& n) {
  return path + ":" + std::to_string(n.source().begin.line);
}

[[noreturn]] void fail(const std::string& loc, const std::string& msg) { throw DataError(loc + ": " + msg); }

Rational rational_of(const std::string& path, const toml::node& n) {
  if (auto i = n.as_integer()) return Rational(static_cast<long>(i->get()));
  if (auto s = n.as_string()) {
    try {
      return parse_rational(s->get());
    } catch (const std::exception& e) {
      fail(where(path, n), e.what());
    }
  }
  fail(where(path, n), "expected an integer or a \"p/q\" string");
}

long integer_of(const std::string& path, const toml::node& n) {
  if (auto i = n.as_integer()) return static_cast<long>(i->get());
  fail(where(path, n), "expected an integer");
}

std::string string_of(const std::string& path, const toml::node& n) {
  if (auto s = n.as_string()) return s->get();
  fail(where(path, n), "expected a string");
}

const toml::node& required(const std::string& path, const toml::table& t, const char* key) {
  const toml::node* n = t.get(key);
  if (!n) fail(where(path, t), std::string("missing key '") + key + "'");
  return *n;
}

const toml::array& array_of(const std::string& path, const toml::node& n) {
  if (auto a = n.as_array()) return *a;
  fail(where(path, n), "expected an array");
}

std::vector<std::pair<long, long>> pairs_of(const std::string& path, const toml::node& n) {
  std::vector<std::pair<long, long>> out;
  for (const auto& e : array_of(path, n)) {
    const auto& p = array_of(path, e);
    if (p.size() != 2) fail(where(path, e), "expected a [k, b] pair");
    out.emplace_back(integer_of(path, *p.get(0)), integer_of(path, *p.get(1)));
  }
  return out;
}

std::vector<std::array<long, 4>> rows_of(const std::string& path, const toml::node& n) {
  std::vector<std::array<long, 4>> out;
  for (const auto& e : array_of(path, n)) {
    const auto& p = array_of(path, e);
    if (p.size() != 4) fail(where(path, e), "expected a [c3, c2, c1, c0] row");
    std::array<long, 4> row{};
    for (size_t i = 0; i < 4; ++i) row[i] = integer_of(path, *p.get(i));
    out.push_back(row);
  }
  return out;
}

toml::table parse_toml(const std::string& path) {
  try {
    return toml::parse_file(path);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << path << ":" << e.source().begin.line << ": " << e.description();
    throw DataError(os.str());
  }
}

void check_keys(const std::string& path, const toml::table& t, std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : t) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k.str() == a;
    if (!ok) fail(where(path, v), "unknown key '" + std::string(k.str()) + "'");
  }
}

TTildeAtom atom_of(const std::string& path, const toml::node& n) {
  const toml::table* t = n.as_table();
  if (!t) fail(where(path, n), "atom must be a table");
  check_keys(path, *t, {"type", "factors", "coeff", "level", "scale"});
  TTildeAtom a;
  std::string type = string_of(path, required(path, *t, "type"));
  a.coeff = rational_of(path, required(path, *t, "coeff"));
  if (type == "eta") {
    a.kind = TTildeAtom::Kind::Eta;
    a.eta.factors = pairs_of(path, required(path, *t, "factors"));
    a.eta.canonicalize();
    if (a.eta.weight() != 2) fail(where(path, n), "eta atom must have weight 2");
  } else if (type == "e2n") {
    a.kind = TTildeAtom::Kind::E2N;
    a.level = integer_of(path, required(path, *t, "level"));
    a.scale = t->get("scale") ? integer_of(path, *t->get("scale")) : 1;
    if (a.level < 2) fail(where(path, n), "e2n level must be >= 2");
    if (a.scale < 1) fail(where(path, n), "e2n scale must be positive");
  } else {
    fail(where(path, n), "atom type must be 'eta' or 'e2n'");
  }
  return a;
}

PPTerm term_of(const std::string& path, const toml::node& n) {
  const toml::table* t = n.as_table();
  if (!t) fail(where(path, n), "term must be a table");
  check_keys(path, *t, {"coeff", "exp", "sum", "mod", "products", "at"});
  PPTerm term;
  term.line = n.source().begin.line;
  term.coeff = rational_of(path, required(path, *t, "coeff"));
  term.exponent = rational_of(path, required(path, *t, "exp"));
  std::string sum = t->get("sum") ? string_of(path, *t->get("sum")) : "single";
  if (sum == "single") term.sum = PPTerm::Sum::Single;
  else if (sum == "units") term.sum = PPTerm::Sum::Units;
  else if (sum == "all") term.sum = PPTerm::Sum::All;
  else if (sum == "pairs") term.sum = PPTerm::Sum::Pairs;
  else fail(where(path, n), "sum must be single, units, all or pairs");
  if (term.sum != PPTerm::Sum::Single) {
    term.modulus = integer_of(path, required(path, *t, "mod"));
    if (term.modulus < 1) fail(where(path, n), "mod must be positive");
  }
  if (term.sum == PPTerm::Sum::Pairs) {
    for (const auto& e : array_of(path, required(path, *t, "products"))) term.products.push_back(integer_of(path, e));
  }
  const auto& at = array_of(path, required(path, *t, "at"));
  if (at.size() != 3) fail(where(path, n), "'at' must have three coordinates");
  for (size_t i = 0; i < 3; ++i) {
    try {
      term.at[i] = CoordExpr::parse(string_of(path, *at.get(i)));
    } catch (const std::exception& e) {
      fail(where(path, *at.get(i)), e.what());
    }
    bool uses_var = term.at[i].ka || term.at[i].kinv || term.at[i].kc;
    if (term.sum == PPTerm::Sum::Single && uses_var) fail(where(path, n), "single term may not use a summation variable");
    if (term.at[i].kc && term.sum != PPTerm::Sum::Pairs) fail(where(path, n), "variable c only allowed with sum = pairs");
    if (term.at[i].kinv && term.sum != PPTerm::Sum::Units) fail(where(path, n), "ainv only allowed with sum = units");
  }
  if (sgn(term.exponent) >= 0) fail(where(path, n), "principal-part exponent must be negative");
  return term;
}

}  // namespace

CoordExpr CoordExpr::parse(const std::string& text) {
  CoordExpr e;
  e.text = text;
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  size_t i = 0;
  long sign = 1;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
    if (s[i] == '-') sign = -1;
    ++i;
  }
  size_t ds = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  std::string digits = s.substr(ds, i - ds);
  std::string var;
  if (s.compare(i, 4, "ainv") == 0) {
    var = "ainv";
    i += 4;
  } else if (i < s.size() && (s[i] == 'a' || s[i] == 'c')) {
    var = std::string(1, s[i]);
    ++i;
  }
  long den = 1;
  if (i < s.size()) {
    if (s[i] != '/') throw DataError("bad coordinate '" + text + "'");
    ++i;
    size_t dstart = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (dstart == i || i != s.size()) throw DataError("bad coordinate '" + text + "'");
    den = std::stol(s.substr(dstart));
    if (den <= 0) throw DataError("bad denominator in '" + text + "'");
  }
  if (digits.empty() && var.empty()) throw DataError("bad coordinate '" + text + "'");
  long k = digits.empty() ? 1 : std::stol(digits);
  k *= sign;
  if (var.empty()) {
    e.constant = make_q(k, den);
  } else {
    e.den = den;
    if (var == "a") e.ka = k;
    else if (var == "ainv") e.kinv = k;
    else e.kc = k;
  }
  return e;
}

Rational CoordExpr::eval(long a, long ainv, long c) const {
  return constant + make_q(ka * a + kinv * ainv + kc * c, den);
}

std::string PPTerm::describe() const {
  std::ostringstream os;
  os << coeff.get_str() << " ";
  switch (sum) {
    case Sum::Single: break;
    case Sum::Units: os << "sum_{a in (Z/" << modulus << ")^x} "; break;
    case Sum::All: os << "sum_{a in Z/" << modulus << "} "; break;
    case Sum::Pairs: {
      os << "sum_{a c in {";
      for (size_t i = 0; i < products.size(); ++i) os << (i ? "," : "") << products[i];
      os << "} mod " << modulus << "} ";
      break;
    }
  }
  os << "q^(" << exponent.get_str() << ") e(" << at[0].text << ", " << at[1].text << ", " << at[2].text << ")";
  return os.str();
}

std::string default_data_dir() {
  const char* d = std::getenv("M24_DATA_DIR");
  if (d && *d) return d;
  return M24_DEFAULT_DATA_DIR;
}

ClassTable load_classes(const std::string& classes_path, const std::string& ttilde_path) {
  toml::table ct = parse_toml(classes_path);
  std::vector<ClassRecord> recs;
  const toml::node* arr = ct.get("class");
  if (!arr) throw DataError(classes_path + ": missing [[class]] entries");
  for (const auto& n : array_of(classes_path, *arr)) {
    const toml::table* t = n.as_table();
    if (!t) fail(where(classes_path, n), "class entry must be a table");
    check_keys(classes_path, *t, {"name", "shape", "order", "level"});
    ClassRecord r;
    r.name = string_of(classes_path, required(classes_path, *t, "name"));
    r.shape = pairs_of(classes_path, required(classes_path, *t, "shape"));
    r.order = integer_of(classes_path, required(classes_path, *t, "order"));
    r.level = integer_of(classes_path, required(classes_path, *t, "level"));
    std::string err = check_record(r);
    if (!err.empty()) fail(where(classes_path, n), err);
    recs.push_back(r);
  }
  ClassTable table(std::move(recs));

  toml::table tt = parse_toml(ttilde_path);
  const toml::node* tarr = tt.get("class");
  if (!tarr) throw DataError(ttilde_path + ": missing [[class]] entries");
  std::map<std::string, bool> seen;
  for (const auto& n : array_of(ttilde_path, *tarr)) {
    const toml::table* t = n.as_table();
    if (!t) fail(where(ttilde_path, n), "entry must be a table");
    check_keys(ttilde_path, *t, {"name", "atoms", "provenance"});
    std::string name = string_of(ttilde_path, required(ttilde_path, *t, "name"));
    if (!table.contains(name)) fail(where(ttilde_path, n), "unknown class '" + name + "'");
    if (seen[name]) fail(where(ttilde_path, n), "duplicate entry for " + name);
    seen[name] = true;
    ClassRecord* rec = nullptr;
    for (auto& rr : table.mutable_records())
      if (rr.name == name) rec = &rr;
    rec->has_ttilde = true;
    rec->provenance = t->get("provenance") ? string_of(ttilde_path, *t->get("provenance")) : "";
    for (const auto& a : array_of(ttilde_path, required(ttilde_path, *t, "atoms"))) {
      TTildeAtom atom = atom_of(ttilde_path, a);
      // Eta atoms may live on a larger level as long as their sum is on Gamma_0(N_g).
      if (atom.kind == TTildeAtom::Kind::E2N && rec->level % (atom.level * atom.scale) != 0)
        fail(where(ttilde_path, a), "E2N atom level does not divide the class level");
      rec->ttilde.push_back(atom);
    }
  }
  return table;
}

std::map<std::string, PPTable> load_principal_parts(const std::string& path) {
  toml::table root = parse_toml(path);
  std::map<std::string, PPTable> out;
  const toml::node* arr = root.get("class");
  if (!arr) throw DataError(path + ": missing [[class]] entries");
  for (const auto& n : array_of(path, *arr)) {
    const toml::table* t = n.as_table();
    if (!t) fail(where(path, n), "class entry must be a table");
    check_keys(path, *t, {"name", "constant", "terms", "chi", "phi", "family", "input", "input_rows"});
    PPTable pp;
    pp.name = string_of(path, required(path, *t, "name"));
    pp.source = where(path, n);
    pp.constant = rational_of(path, required(path, *t, "constant"));
    for (const auto& e : array_of(path, required(path, *t, "terms"))) pp.terms.push_back(term_of(path, e));
    if (const toml::node* c = t->get("chi")) pp.chi = integer_of(path, *c);
    if (const toml::node* p = t->get("phi")) pp.phi_rows = rows_of(path, *p);
    if (const toml::node* f = t->get("family")) {
      const toml::table* ft = f->as_table();
      if (!ft) fail(where(path, *f), "family must be a table");
      for (const auto& [k, v] : *ft) {
        long d = 0;
        try {
          d = std::stol(std::string(k.str()));
        } catch (const std::exception&) {
          fail(where(path, v), "family keys must be divisors");
        }
        pp.family[d] = string_of(path, v);
      }
    }
    if (const toml::node* in = t->get("input")) {
      const toml::table* it = in->as_table();
      if (!it) fail(where(path, *in), "input must be a table");
      check_keys(path, *it, {"prefactor", "factors"});
      EtaQuotient eq;
      eq.prefactor = rational_of(path, required(path, *it, "prefactor"));
      eq.factors = pairs_of(path, required(path, *it, "factors"));
      eq.canonicalize();
      pp.input_eta = eq;
    }
    if (const toml::node* r = t->get("input_rows")) pp.input_rows = rows_of(path, *r);
    if (out.count(pp.name)) fail(where(path, n), "duplicate class " + pp.name);
    out.emplace(pp.name, pp);
  }
  return out;
}

DataSet ingest(const std::string& dir) {
  DataSet ds;
  ds.dir = dir;
  std::string cp = dir + "/classes.toml", tp = dir + "/ttilde.toml";
  std::string ap = dir + "/appendix_a.toml", bp = dir + "/appendix_b.toml";
  ds.classes = load_classes(cp, tp);
  ds.appendix_a = load_principal_parts(ap);
  ds.appendix_b = load_principal_parts(bp);
  for (const auto& [name, pp] : ds.appendix_a)
    if (!ds.classes.contains(name)) throw DataError(pp.source + ": unknown class " + name);
  for (const auto& [name, pp] : ds.appendix_b)
    if (!ds.classes.contains(name)) throw DataError(pp.source + ": unknown class " + name);
  std::string blob;
  for (const auto& p : {cp, tp, ap, bp}) blob += sha256_hex(read_file(p));
  ds.content_hash = sha256_hex(blob);
  return ds;
}

const DataSet& shipped_data() {
  static std::once_flag once;
  static DataSet ds;
  std::call_once(once, [] { ds = ingest(default_data_dir()); });
  return ds;
}

}  // namespace m24
