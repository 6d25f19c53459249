#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace fracclique {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// C(a, b) with the convention C(a, b) = 0 whenever b < 0 or b > a.
Integer binom(long long a, long long b);

/// n^k for k >= 0; returns the exact rational n^k for negative k.
Rational rpow(long long base, long long exponent);

double to_double(const Rational& q);

/// "p/q" or "p" when the denominator is one.
std::string to_string(const Rational& q);

/// Parses "p/q", "p" or a decimal literal ("0.125") into an exact rational.
Rational parse_rational(const std::string& text);

}  // namespace fracclique
