#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "m24/borcherds.hpp"
#include "m24/jacobi.hpp"
#include "m24/series.hpp"
#include "m24/weil.hpp"

namespace m24 {

using Json = nlohmann::json;

// Rationals are written as strings "p" or "p/q".
Json rational_json(const Rational& r);
Rational rational_from_json(const Json& j);

// {expDenom, truncNum, truncDen, terms: [[expNum, conductor, coord_0, ...]]}; an exact series
// has null truncNum and truncDen. Coordinates are dense in the power basis of Q(zeta_conductor).
Json series_json(const QSeries& s);
Json series_json(const CSeries& s);
CSeries cseries_from_json(const Json& j);

// {qDenom, zDenom, truncNum, truncDen, weight, index, level, terms: [[qNum, zNum, conductor, coords...]]}
Json jacobi_json(const QJacobi& f);
Json jacobi_json(const CJacobi& f);

Json principal_part_json(const PrincipalPart& pp, const Rational& constant, long N);
// Inverse of principal_part_json; returns the constant term through the second argument.
PrincipalPart principal_part_from_json(const Json& j, Rational& constant);
Json siegel_json(const SiegelSeries& s);
Json fj_expansion_json(const FJExpansion& f);
Json humbert_json(const std::vector<HumbertEntry>& entries, long N);

// Serialized form used for output files and the cache: two-space indent, sorted keys.
std::string dump(const Json& j);

}  // namespace m24
