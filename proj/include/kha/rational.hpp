#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace kha {

/// Arbitrary precision rational, always kept canonical by GMP.
using Rational = mpq_class;

/// Parses "p" or "p/q" (optional sign, no whitespace inside digits).
Rational parse_rational(std::string_view text);

/// Serializes as "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

Rational binomial(long n, long k);

}  // namespace kha
