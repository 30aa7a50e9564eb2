#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <vector>

namespace toristab {

// All quantities in this library are exact. Int is an arbitrary-precision
// integer and Rational an arbitrary-precision rational kept in lowest terms
// with positive denominator (GMP canonical form).
using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using QVec = std::vector<Rational>;
using ZVec = std::vector<Int>;

/// Parses "p", "-p", "p/q" or "-p/q" (q > 0 after normalization).
/// Throws ParseError for anything else, including a zero denominator.
Rational parse_rational(const std::string& text);

/// Canonical text form: "p" when the denominator is 1, else "p/q".
std::string format_rational(const Rational& value);

/// Fixed-width decimal rendering used next to exact values in reports.
std::string approx_decimal(const Rational& value);

Int rational_floor(const Rational& value);
Int rational_ceil(const Rational& value);

bool lex_less(const QVec& a, const QVec& b);

Rational dot(const QVec& a, const QVec& b);
Rational dot(const ZVec& a, const QVec& b);
Int dot(const ZVec& a, const ZVec& b);

std::string format_vector(const QVec& v);

}  // namespace toristab
