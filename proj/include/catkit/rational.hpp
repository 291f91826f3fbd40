#pragma once

#include <gmpxx.h>

#include <string>

namespace catkit {

/// Arbitrary-precision rational number. All order-theoretic decisions in the
/// library are made with this type; floating point appears only in the
/// analytic layer (cumulants, rate functions, entropies).
using Rational = mpq_class;

/// Parses "a/b", an integer string, or an exact decimal string ("0.4" -> 2/5).
/// Optional leading '-'. Throws ParseError on anything else (empty string,
/// zero denominator, exponent notation, stray characters).
Rational parse_rational(const std::string& text);

/// Canonical fraction form: "a/b", or just "a" when the denominator is 1.
std::string to_fraction_string(const Rational& q);

/// Exact decimal form when the denominator is of the form 2^a 5^b
/// (e.g. 3/5 -> "0.6"), otherwise falls back to the fraction form.
std::string to_human_string(const Rational& q);

/// Rounds toward zero an exact rational to double. GMP's mpq -> double
/// conversion, exposed under a name that flags the precision loss.
double to_double(const Rational& q);

/// Exact conversion of a double to the rational it represents.
Rational rational_from_double(double v);

/// Smallest integer >= q.
Rational ceil_rational(const Rational& q);

/// Natural log of a positive rational, accurate even when the value itself
/// would overflow or underflow a double. Returns -inf for q = 0.
double log_to_double(const Rational& q);

}  // namespace catkit
