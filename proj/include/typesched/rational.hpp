#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace typesched {

using Rational = mpq_class;

// Parses "a/b", "a" or "-a/b". Throws std::invalid_argument on malformed
// input or a zero denominator.
Rational parse_rational(std::string_view text);

// Canonical "a/b" form; integers print without a denominator.
std::string to_string(const Rational& value);

// num/den in canonical form. Prefer this over the two-argument mpq_class
// constructor, which leaves the fraction unreduced and breaks comparisons.
inline Rational ratio(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational pow(const Rational& base, unsigned exponent);

inline bool is_integer(const Rational& value) {
  return value.get_den() == 1;
}

inline double to_double(const Rational& value) { return value.get_d(); }

// Exact conversion of a finite double.
Rational from_double(double value);

// Ceiling of a rational as a long; the value must fit.
long ceil_to_long(const Rational& value);
long floor_to_long(const Rational& value);

}  // namespace typesched
