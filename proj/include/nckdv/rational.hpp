#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace nckdv {

// Exact rational coefficients. Verification relies on exact zeros, never
// floating point, so coefficients carry arbitrary-precision integers.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string rational_to_string(const Rational& r) {
  return r.str();
}

}  // namespace nckdv
