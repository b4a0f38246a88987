#include "m24/json_io.hpp"

namespace m24 {

namespace {

Json coeff_entry(const Cyclotomic& c) {
  Json row = Json::array();
  row.push_back(c.conductor());
  for (const auto& v : c.dense_coords()) row.push_back(rational_json(v));
  return row;
}

Json coeff_entry(const Rational& c) { return Json::array({1, rational_json(c)}); }

template <class T>
void put_trunc(Json& j, const T& trunc) {
  if (trunc) {
    j["truncNum"] = trunc->get_num().get_str();
    j["truncDen"] = trunc->get_den().get_str();
  } else {
    j["truncNum"] = nullptr;
    j["truncDen"] = nullptr;
  }
}

template <class C>
Json series_json_impl(const Series<C>& s) {
  Json j;
  j["expDenom"] = s.denom();
  put_trunc(j, s.trunc());
  Json terms = Json::array();
  for (const auto& [k, c] : s.terms()) {
    Json row = Json::array({k});
    for (auto& v : coeff_entry(c)) row.push_back(v);
    terms.push_back(row);
  }
  j["terms"] = terms;
  return j;
}

template <class C>
Json jacobi_json_impl(const Jacobi<C>& f) {
  Json j;
  j["qDenom"] = f.qdenom();
  j["zDenom"] = f.zdenom();
  put_trunc(j, f.trunc());
  j["weight"] = rational_json(f.weight);
  j["index"] = rational_json(f.index);
  j["level"] = f.level;
  Json terms = Json::array();
  for (const auto& [n, row] : f.rows())
    for (const auto& [r, c] : row) {
      Json t = Json::array({n, r});
      for (auto& v : coeff_entry(c)) t.push_back(v);
      terms.push_back(t);
    }
  j["terms"] = terms;
  return j;
}

}  // namespace

Json rational_json(const Rational& r) { return r.get_str(); }

Rational rational_from_json(const Json& j) {
  Rational r(j.get<std::string>());
  r.canonicalize();
  return r;
}

Json series_json(const QSeries& s) { return series_json_impl(s); }
Json series_json(const CSeries& s) { return series_json_impl(s); }

CSeries cseries_from_json(const Json& j) {
  Trunc t;
  if (!j.at("truncNum").is_null())
    t = Rational(Integer(j.at("truncNum").get<std::string>()), Integer(j.at("truncDen").get<std::string>()));
  if (t) t->canonicalize();
  CSeries s(j.at("expDenom").get<long>(), t);
  for (const auto& row : j.at("terms")) {
    long k = row.at(0).get<long>();
    long n = row.at(1).get<long>();
    std::map<long, Rational> powers;
    for (size_t i = 2; i < row.size(); ++i) {
      Rational v = rational_from_json(row.at(i));
      if (sgn(v)) powers[static_cast<long>(i - 2)] = v;
    }
    s.add(k, Cyclotomic::from_powers(n, powers));
  }
  return s;
}

Json jacobi_json(const QJacobi& f) { return jacobi_json_impl(f); }
Json jacobi_json(const CJacobi& f) { return jacobi_json_impl(f); }

Json principal_part_json(const PrincipalPart& pp, const Rational& constant, long N) {
  Json j;
  j["level"] = N;
  j["constant"] = rational_json(constant);
  Json terms = Json::array();
  for (const auto& [key, c] : pp) {
    const DiscElement& e = key.first;
    terms.push_back({{"x", e.x}, {"r", e.r}, {"y", e.y}, {"exponent", rational_json(key.second)},
                     {"coeff", rational_json(c)}});
  }
  j["terms"] = terms;
  return j;
}

PrincipalPart principal_part_from_json(const Json& j, Rational& constant) {
  constant = rational_from_json(j.at("constant"));
  PrincipalPart pp;
  for (const auto& t : j.at("terms")) {
    DiscElement e{t.at("x").get<long>(), t.at("r").get<long>(), t.at("y").get<long>()};
    pp[{e, rational_from_json(t.at("exponent"))}] = rational_from_json(t.at("coeff"));
  }
  return pp;
}

Json siegel_json(const SiegelSeries& s) {
  Json j;
  j["qmax"] = s.qmax();
  j["smax"] = s.smax();
  Json terms = Json::array();
  for (const auto& [nm, row] : s.rows())
    for (const auto& [r, c] : row) terms.push_back(Json::array({nm.first, r, nm.second, rational_json(c)}));
  j["terms"] = terms;
  return j;
}

Json fj_expansion_json(const FJExpansion& f) {
  Json j;
  j["name"] = f.name;
  j["t"] = f.t;
  j["N"] = f.N;
  j["weyl"] = {rational_json(f.weyl.A), rational_json(f.weyl.B), rational_json(f.weyl.C)};
  j["weight"] = rational_json(f.weight);
  j["series"] = siegel_json(f.series);
  return j;
}

Json humbert_json(const std::vector<HumbertEntry>& entries, long N) {
  Json j;
  j["level"] = N;
  Json rows = Json::array();
  for (const auto& h : entries)
    rows.push_back({{"a", h.a},
                    {"n", h.n},
                    {"r", h.r},
                    {"m", h.m},
                    {"b", h.b},
                    {"delta", rational_json(h.delta)},
                    {"multiplicity", rational_json(h.multiplicity)},
                    {"count", h.count}});
  j["divisors"] = rows;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace m24
