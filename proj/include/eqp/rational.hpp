#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace eqp {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double x) { return x; }

// Accepts plain integers ("7", "-2"), decimals ("1.5", "-0.25") and exact
// fractions ("7/3"). Decimals parse exactly, e.g. "1.5" -> 3/2.
Rational rational_from_string(const std::string& s);

// Integers print bare, everything else as "p/q".
std::string rational_to_string(const Rational& r);

}  // namespace eqp
