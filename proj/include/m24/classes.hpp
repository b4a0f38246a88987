#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "m24/blocks.hpp"

namespace m24 {

using Shape = std::vector<std::pair<long, long>>;  // (k, b_k), k increasing, b_k != 0

struct ClassRecord {
  std::string name;
  Shape shape;
  long order = 1;
  long level = 1;
  std::vector<TTildeAtom> ttilde;  // empty for 1A
  bool has_ttilde = false;         // false when no closed form was supplied
  std::string provenance;

  long chi() const;
  Rational weight() const;  // k_g = (1/2) sum b_k - 2
  EtaQuotient eta_product() const;
};

class ClassTable {
 public:
  ClassTable() = default;
  explicit ClassTable(std::vector<ClassRecord> records);

  const std::vector<ClassRecord>& records() const { return records_; }
  const ClassRecord& get(const std::string& name) const;
  bool contains(const std::string& name) const { return index_.count(name) > 0; }
  // Class with the given cycle shape; throws if absent.
  const ClassRecord& by_shape(const Shape& shape) const;
  // Class of g^d.
  const ClassRecord& power_class(const ClassRecord& rec, long d) const;
  // Member d of the family (phi_{g^d}), d | N_g: the class of g^gcd(d, n_g).
  std::map<long, std::string> family(const std::string& name) const;

  std::vector<ClassRecord>& mutable_records() { return records_; }
  void reindex();

 private:
  std::vector<ClassRecord> records_;
  std::map<std::string, size_t> index_;
};

Shape canonical_shape(Shape s);
Shape power_shape(const Shape& shape, long d);
long chi_power(const Shape& shape, long d);  // sum_{k | d} k b_k
// Inverse of chi_power: traces keyed by every divisor of the order.
Shape exponents_from_traces(const std::map<long, long>& traces);
long shape_order(const Shape& shape);
long shape_level(const Shape& shape);
long shape_degree(const Shape& shape);  // sum k b_k
std::string shape_str(const Shape& shape);

// Checks the record invariants; returns an empty string on success.
std::string check_record(const ClassRecord& rec);

}  // namespace m24
