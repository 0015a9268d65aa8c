#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace ufg {

using Rational = mpq_class;

// Parses "p/q" or an integer literal, with optional sign. Throws InvalidInput.
Rational parse_rational(std::string_view text);

// Canonical "p/q" (or "p" when the denominator is 1).
std::string to_string(const Rational& q);

// Number of significant bits in numerator plus denominator.
std::size_t bit_size(const Rational& q);

// Approximate heap footprint of the limbs backing q.
std::size_t limb_bytes(const Rational& q);

// Stable 64-bit hash of the canonical value (FNV-1a over the limbs).
std::uint64_t hash_value(const Rational& q, std::uint64_t seed = 0xcbf29ce484222325ULL);

// q = mantissa * 2^exponent with 0.5 <= |mantissa| < 1, or mantissa 0.
// Works for magnitudes far outside the double range.
struct ScaledValue {
  double mantissa = 0.0;
  long exponent = 0;
};
ScaledValue to_scaled(const Rational& q);

// Natural log of |q|; -inf for zero.
double log_abs(const Rational& q);

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace ufg
