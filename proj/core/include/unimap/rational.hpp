#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace unimap {

using Rational = mpq_class;

// Parses `p/q`, an integer, or a decimal with optional exponent ("-0.25",
// "1e-3"). Decimals convert exactly. Throws ParseError.
Rational parse_rational(std::string_view text);

// `p/q`, or `p` when the denominator is one.
std::string to_string(const Rational& q);

// Finite decimal expansion when the denominator has only factors 2 and 5,
// `p/q` otherwise.
std::string to_decimal_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

// Exact conversion of a finite double.
Rational from_double(double v);

inline Rational abs(const Rational& q) { return ::abs(q); }

}  // namespace unimap
