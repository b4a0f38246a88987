#pragma once

#include <cmath>
#include <complex>

#include "m24/cyclotomic.hpp"
#include "m24/series.hpp"

namespace numeric {

using cd = std::complex<double>;
inline const double kPi = std::acos(-1.0);

inline cd ex(double t) { return std::polar(1.0, 2 * kPi * t); }

inline cd value(const m24::Cyclotomic& c) {
  cd s = 0;
  for (const auto& [k, v] : c.coords()) s += v.get_d() * ex(double(k) / c.conductor());
  return s;
}
inline cd value(const m24::Rational& r) { return r.get_d(); }

template <class C>
cd eval(const m24::Series<C>& s, cd tau) {
  cd acc = 0;
  for (const auto& [k, c] : s.terms()) acc += value(c) * std::exp(2.0 * kPi * cd(0, 1) * tau * double(k) / double(s.denom()));
  return acc;
}

}  // namespace numeric
