#include "m24/classes.hpp"

#include <sstream>
#include <stdexcept>

namespace m24 {

long ClassRecord::chi() const {
  for (auto [k, b] : shape)
    if (k == 1) return b;
  return 0;
}

Rational ClassRecord::weight() const {
  long s = 0;
  for (auto [k, b] : shape) s += b;
  return make_q(s, 2) - 2;
}

EtaQuotient ClassRecord::eta_product() const {
  EtaQuotient e;
  e.factors = shape;
  return e;
}

ClassTable::ClassTable(std::vector<ClassRecord> records) : records_(std::move(records)) { reindex(); }

void ClassTable::reindex() {
  index_.clear();
  for (size_t i = 0; i < records_.size(); ++i) {
    if (!index_.emplace(records_[i].name, i).second)
      throw std::invalid_argument("duplicate class name " + records_[i].name);
  }
}

const ClassRecord& ClassTable::get(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw std::out_of_range("unknown class " + name);
  return records_[it->second];
}

const ClassRecord& ClassTable::by_shape(const Shape& shape) const {
  Shape s = canonical_shape(shape);
  for (const auto& r : records_)
    if (r.shape == s) return r;
  throw std::out_of_range("no class with cycle shape " + shape_str(s));
}

const ClassRecord& ClassTable::power_class(const ClassRecord& rec, long d) const {
  return by_shape(power_shape(rec.shape, d));
}

std::map<long, std::string> ClassTable::family(const std::string& name) const {
  const ClassRecord& rec = get(name);
  std::map<long, std::string> fam;
  for (long d : divisors(rec.level)) fam[d] = power_class(rec, gcd(d, rec.order)).name;
  return fam;
}

Shape canonical_shape(Shape s) {
  std::map<long, long> m;
  for (auto [k, b] : s) m[k] += b;
  Shape out;
  for (auto [k, b] : m)
    if (b != 0) out.emplace_back(k, b);
  return out;
}

Shape power_shape(const Shape& shape, long d) {
  // g^d turns each k-cycle into gcd(k, d) cycles of length k / gcd(k, d)
  Shape out;
  for (auto [k, b] : shape) {
    long g = gcd(k, d);
    out.emplace_back(k / g, g * b);
  }
  return canonical_shape(out);
}

long chi_power(const Shape& shape, long d) {
  long s = 0;
  for (auto [k, b] : shape)
    if (d % k == 0) s += k * b;
  return s;
}

Shape exponents_from_traces(const std::map<long, long>& traces) {
  // k b_k = sum_{d | k} mu(k / d) chi(g^d)
  Shape out;
  for (const auto& [k, unused] : traces) {
    long s = 0;
    for (long d : divisors(k)) {
      auto it = traces.find(d);
      if (it == traces.end()) throw std::invalid_argument("missing trace for divisor " + std::to_string(d));
      s += mobius(k / d) * it->second;
    }
    if (s % k != 0) throw std::domain_error("non-integral cycle exponent at k = " + std::to_string(k));
    if (s != 0) out.emplace_back(k, s / k);
  }
  return canonical_shape(out);
}

long shape_order(const Shape& shape) {
  long n = 1;
  for (auto [k, b] : shape) n = lcm(n, k);
  return n;
}

long shape_level(const Shape& shape) {
  if (shape.empty()) return 1;
  long mn = shape.front().first;
  for (auto [k, b] : shape) mn = std::min(mn, k);
  return shape_order(shape) * mn;
}

long shape_degree(const Shape& shape) {
  long s = 0;
  for (auto [k, b] : shape) s += k * b;
  return s;
}

std::string shape_str(const Shape& shape) {
  std::ostringstream os;
  bool first = true;
  for (auto [k, b] : shape) {
    if (!first) os << " ";
    first = false;
    os << k << "^" << b;
  }
  return os.str();
}

std::string check_record(const ClassRecord& rec) {
  std::ostringstream err;
  if (rec.shape.empty()) return rec.name + ": empty cycle shape";
  if (canonical_shape(rec.shape) != rec.shape) err << rec.name << ": cycle shape not canonical; ";
  long maxk = 0;
  for (auto [k, b] : rec.shape) maxk = std::max(maxk, k);
  if (rec.order != maxk) err << rec.name << ": order " << rec.order << " != largest cycle " << maxk << "; ";
  if (rec.level != shape_level(rec.shape))
    err << rec.name << ": level " << rec.level << " != " << shape_level(rec.shape) << "; ";
  if (shape_degree(rec.shape) != 24) err << rec.name << ": sum k b_k = " << shape_degree(rec.shape) << " != 24; ";
  for (auto [k, b] : rec.shape)
    if (b < 0) err << rec.name << ": negative cycle count; ";
  return err.str();
}

}  // namespace m24
