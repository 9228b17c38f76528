#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace plift {

// Exact arbitrary-precision rational. Every symbolic identity in the
// toolkit reduces to "this polynomial is identically zero", so coefficient
// arithmetic must never round or overflow.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) {
    return r.str();
}

// Accepts "p", "p/q" and plain decimals ("0.25" -> 1/4).
Rational rational_from_string(const std::string& text);

}  // namespace plift
