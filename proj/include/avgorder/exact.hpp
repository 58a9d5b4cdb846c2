#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace avgorder {

using ExactInt = mpz_class;
using ExactRational = mpq_class;

ExactInt pow_int(const ExactInt& base, unsigned long exponent);
ExactInt pow_int(std::uint64_t base, unsigned long exponent);

// base^exponent for a possibly negative exponent.
ExactRational pow_rational(std::uint64_t base, long exponent);

// Largest e with p^e | n; n must be nonzero.
unsigned valuation(const ExactInt& n, std::uint64_t p);
unsigned valuation(std::uint64_t n, std::uint64_t p);

ExactInt to_exact(std::uint64_t value);

// Lossless only when the value fits; callers check fits_u64 first.
bool fits_u64(const ExactInt& value);
std::uint64_t to_u64(const ExactInt& value);

std::string to_string(const ExactInt& value);
std::string to_string(const ExactRational& value);

} // namespace avgorder
