#pragma once

#include <map>
#include <string>
#include <vector>

#include "m24/data.hpp"

namespace m24 {

// The family (phi_{g^d})_{d | N_g}.
struct GenusFamily {
  std::string cls;
  long level = 1;
  std::map<long, std::string> names;  // d -> class of g^d
  std::map<long, QJacobi> members;    // d -> phi_{g^d}
};

// Weight-2 form T~_g at infinity. Classes without a closed form use the coefficients
// recovered from the listed input rows, which caps the truncation at q^3.
QSeries ttilde_series(const ClassRecord& rec, const Rational& T, const PPTable* rows = nullptr);

// phi_g = (chi(g)/12) phi_{0,1} + T~_g phi_{-2,1}.
QJacobi genus(const ClassRecord& rec, const Rational& T, const PPTable* rows = nullptr);
GenusFamily genus_family(const DataSet& ds, const std::string& cls, const Rational& T);

// t_0..t_K from phi_g rows at q^0..q^K given as (c3, c2, c1, c0); exact division by
// zeta - 2 + zeta^-1 is required.
std::vector<Rational> recover_ttilde_coeffs(long chi, const std::vector<std::array<long, 4>>& rows, long K);

// Compares the q^0..q^2 rows of phi_g with the table. Returns mismatch messages.
std::vector<std::string> validate_against_appendixA(const ClassRecord& rec, const PPTable& table);

// Full data check: T~ rows for every class, chi, the family maps and the appendix_b.toml input rows.
std::vector<std::string> validate_dataset(const DataSet& ds);

// Laurent row (c3, c2, c1, c0) of a symmetric index-1 form at q^n.
std::array<Rational, 4> symmetric_row(const QJacobi& phi, long n);

}  // namespace m24
