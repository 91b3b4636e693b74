#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace multipeak {

/// Exact rational number. All discrete values in this library (valuations,
/// prices, bounds) are kept exact; doubles appear only in the continuous
/// relaxation helpers and in human-readable output.
using Rational = mpq_class;

/// Builds num/den in canonical form. den must be nonzero.
Rational make_rational(long num, long den = 1);

/// Parses "p/q", a plain integer, or a finite decimal such as "0.25".
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(const std::string& text);

/// Canonical "p/q" rendering, denominator always present ("3/4", "-2/1").
std::string format_rational(const Rational& q);

double to_double(const Rational& q);

/// (x)+ = max{x, 0}.
inline Rational clamp_nonneg(const Rational& q) {
  return q > 0 ? q : Rational(0);
}

/// base^exp by repeated squaring, exact.
Rational rational_pow(const Rational& base, unsigned long exp);

/// Smallest integer strictly greater than q (floor(q) + 1).
/// The result must fit in a long.
long strict_ceiling(const Rational& q);

/// Largest integer strictly smaller than q (ceil(q) - 1).
long strict_floor(const Rational& q);

}  // namespace multipeak
