#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "m24/classes.hpp"

namespace m24 {

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Linear coordinate expression: constant + (ka a + kinv a^-1 + kc c) / den.
struct CoordExpr {
  Rational constant = 0;
  long ka = 0, kinv = 0, kc = 0;
  long den = 1;
  std::string text;

  static CoordExpr parse(const std::string& text);
  Rational eval(long a, long ainv, long c) const;
  bool uses_inverse() const { return kinv != 0; }
};

// One row of a principal-part table, e.g. -6 sum_{a in (Z/9)^x} q^(-1/36) e(a/9, 1/2, -2a^-1/9).
struct PPTerm {
  enum class Sum { Single, Units, All, Pairs };
  Rational coeff;
  Rational exponent;
  Sum sum = Sum::Single;
  long modulus = 1;
  std::vector<long> products;  // Sum::Pairs: allowed residues of a c mod modulus
  std::array<CoordExpr, 3> at;
  long line = 0;
  std::string describe() const;
};

struct PPTable {
  std::string name;
  Rational constant = 0;
  std::vector<PPTerm> terms;
  std::string source;  // file:line of the class entry
  // appendix_a.toml extras: the listed input rows phi_g at q^0..q^2 as (c3, c2, c1, c0).
  std::optional<long> chi;
  std::vector<std::array<long, 4>> phi_rows;
  std::map<long, std::string> family;
  // appendix_b.toml extras: the input form f_g = eta quotient * phi_{-2,1}.
  std::optional<EtaQuotient> input_eta;
  std::vector<std::array<long, 4>> input_rows;
};

struct DataSet {
  std::string dir;
  ClassTable classes;
  std::map<std::string, PPTable> appendix_a;
  std::map<std::string, PPTable> appendix_b;
  std::string content_hash;  // SHA-256 over the four data files
};

std::string default_data_dir();

ClassTable load_classes(const std::string& classes_path, const std::string& ttilde_path);
std::map<std::string, PPTable> load_principal_parts(const std::string& path);

// Reads and schema-checks all data files. Validation of the weight-2 forms against
// the listed input rows happens in validate_dataset().
DataSet ingest(const std::string& dir);

// Loads the shipped data once (default directory or M24_DATA_DIR).
const DataSet& shipped_data();

}  // namespace m24
