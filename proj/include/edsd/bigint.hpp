#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace edsd {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "num/den" or "num". Throws std::invalid_argument on malformed input
// or zero denominator. The result is canonical.
Rational parse_rational(std::string_view text);

// Always "num/den", den > 0, lowest terms ("2/1" for integers).
std::string format_rational(Rational const &value);

std::string to_string(Integer const &value);

// Largest k with p^k | n; n == 0 is rejected.
unsigned valuation(Integer const &n, Integer const &p);
unsigned valuation(Integer const &n, std::uint64_t p);

// Natural log of |n| for n != 0, accurate to double precision at any size.
double log_abs(Integer const &n);

std::size_t decimal_digits(Integer const &n);

bool fits_u64(Integer const &n);
std::uint64_t to_u64(Integer const &n);
Integer from_u64(std::uint64_t v);

// Removes every factor of p from n, returns the exponent removed.
unsigned strip(Integer &n, Integer const &p);

// n / gcd(n, m)^inf: the part of n coprime to m.
Integer coprime_part(Integer n, Integer const &m);

} // namespace edsd
