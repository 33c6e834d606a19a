#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace dchain {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "p", "p/q", or a finite decimal literal such as "-0.25" into an
// exact rational. Throws UnsupportedInput on anything else.
Rational parse_rational(std::string_view text);

// Recovers the small-denominator rational a double was meant to be
// (2.0/3.0 -> 2/3). Throws UnsupportedInput when no p/q with
// q <= max_denominator reproduces x to 1e-12 relative.
Rational rational_from_double(double x, std::int64_t max_denominator = 1000);

double to_double(const Rational& r);
double to_double(const BigInt& n);

// Always "p/q" with q >= 1, e.g. "3/1", "-2/3".
std::string format_rational(const Rational& r);
std::string format_bigint(const BigInt& n);

}  // namespace dchain
