#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hkz {

// Arbitrary-precision integers and rationals. `mpq_class` keeps values in
// lowest terms with a positive denominator as long as every value enters
// through `ParseRational` or arithmetic on canonical operands.
using Integer = mpz_class;
using Rat = mpq_class;

// Accepts `p/q` or a bare integer, optionally signed. Throws a parse error
// on anything else, including a zero denominator.
Rat ParseRational(std::string_view text);

// Exact rendering: `p/q`, or `p` when the denominator is 1.
std::string ToString(Rat const& value);
std::string ToString(Integer const& value);

// Decimal rendering with `digits` significant digits.
std::string ToDecimal(Rat const& value, int digits = 12);

double ToDouble(Rat const& value);

// num/den in canonical form. mpq_class(num, den) does not canonicalize.
Rat Frac(long num, long den);

Integer Floor(Rat const& value);
// Nearest integer, halves rounded up.
Integer Round(Rat const& value);

Rat Abs(Rat const& value);

// value^exponent for exponent >= 0.
Rat Pow(Rat const& value, unsigned exponent);

}  // namespace hkz
