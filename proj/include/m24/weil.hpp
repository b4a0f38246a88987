#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "m24/cusp.hpp"
#include "m24/data.hpp"

namespace m24 {

// (x/N, r/2t, y/N) in the discriminant group of U(N) + A_1(t).
struct DiscElement {
  long x = 0, r = 0, y = 0;
  auto operator<=>(const DiscElement&) const = default;
};

// Q(x/N, r/2t, y/N) = r^2/4t + x y/N mod 1, in [0, 1).
Rational disc_Q(const DiscElement& e, long N, long t = 1);
std::string disc_str(const DiscElement& e, long N, long t = 1);

struct VVForm {
  long N = 1, t = 1;
  Rational weight = 0;
  std::map<DiscElement, QSeries> comps;

  const QSeries& at(const DiscElement& e) const;
};

using PrincipalPart = std::map<std::pair<DiscElement, Rational>, Rational>;

// One member of an input tuple: c01 phi_{0,1} + S(tau) phi_{-2,1} with S a sum of atoms.
struct JInput {
  Rational c01 = 0;
  std::vector<TTildeAtom> scalar;
  std::string label;
};

struct JFamily {
  std::string name;
  long N = 1;
  Rational weight = 0;              // Jacobi weight k of every member
  std::map<long, JInput> members;   // d | N; absent members are zero
};

JFamily genus_jfamily(const ClassTable& classes, const std::string& cls);
// (eta_g phi_{-2,1}; 0, ..., 0)
JFamily eta_phi_jfamily(const ClassRecord& rec);
// (f_g; 0, ..., 0) for the inputs listed in appendix_b.toml
JFamily appendix_b_jfamily(const DataSet& ds, const std::string& cls);

enum class Route { Jacobi, Theta };

struct JmapOptions {
  bool batch = true;   // compute one b per (Z/N)^x orbit
  int rule = 0;        // choose_A_ab rule
  bool reverse = false;  // reverse summation order (determinism checks)
  Route route = Route::Jacobi;
};

// Vector-valued image of the tuple with every component known below q^T (t = 1).
VVForm jmap(const JFamily& fam, const Rational& T, const JmapOptions& opt = {});

PrincipalPart principal_part(const VVForm& F);
Rational constant_term(const VVForm& F);
bool symmetry_check(const VVForm& F);

// Jhat(eta_g phi_{-2,1}) through the theta components of phi_{-2,1}.
VVForm jmap_theta_route(const ClassRecord& rec, const Rational& T);

// Theta decomposition phi = sum_{r mod 2t} h_r theta_{t,r}; h_r = sum_n c(n, r) q^(n - r^2/4t).
template <class C>
std::map<long, Series<C>> theta_decompose(const Jacobi<C>& phi, long t = 1);

// Orbit-expanded table entries; throws DataError on entries that do not fit level N.
PrincipalPart expand_table(const PPTable& table, long N);
// Mismatch messages between a computed principal part and a table (empty on success).
std::vector<std::string> compare_with_table(const PrincipalPart& pp, const Rational& constant, const PPTable& table,
                                            long N);
// Table notation, one line per (Z/N)^x orbit.
std::string format_pp(const PrincipalPart& pp, const Rational& constant, long N);

}  // namespace m24
