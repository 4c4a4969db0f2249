#pragma once

// Exact integer/rational arithmetic backed by GMP, plus the handful of
// conversions the float paths need.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

namespace finetti {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p/q", an integer, or a plain decimal such as "0.125" or "-2.5e-3"
/// into an exact rational. Throws InputError on malformed text or a zero
/// denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" text ("p" when the denominator is 1).
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

/// Nearest double (ties to even); mpq_get_d truncates instead.
double to_double(const Rational& value);
inline double to_double(double value) { return value; }

/// Natural log of a positive big integer, valid far outside double range.
double log_of(const Integer& value);
/// Natural log of a positive rational, valid far outside double range.
double log_of(const Rational& value);
inline double log_of(double value) { return std::log(value); }

/// log(p/q) for p, q > 0, accurate when p/q is close to 1.
double log_ratio(const Rational& p, const Rational& q);
double log_ratio(double p, double q);

Integer factorial(std::uint64_t n);
Integer binomial(std::uint64_t n, std::uint64_t k);
Integer power(const Integer& base, std::uint64_t exponent);
Rational power(const Rational& base, std::uint64_t exponent);

}  // namespace finetti
