#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace bg {

using Rational = mpq_class;
using Integer = mpz_class;

// Parses "a", "-a" or "a/b" (b > 0); the result is canonical.
Rational parse_rational(const std::string& text);

// Reduced "a/b", or "a" when the denominator is 1.
std::string to_string(const Rational& r);

Rational make_rational(std::int64_t num, std::int64_t den = 1);

// Number of bits needed to write n in binary; bit_length(0) == 0.
int bit_length(std::uint64_t n);

} // namespace bg
