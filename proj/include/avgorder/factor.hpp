#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "avgorder/exact.hpp"

namespace avgorder {

using PrimePower = std::pair<std::uint64_t, unsigned>;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept;
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t m) noexcept;

// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime_u64(std::uint64_t n) noexcept;

// Deterministic below 2^64, probabilistic (40 rounds) above.
bool is_prime(const ExactInt& n);

// Sorted prime factorization of a positive 64-bit integer (Pollard-Brent rho).
std::vector<PrimePower> factor_u64(std::uint64_t n);

// Trial division up to 10^6, then rho on the cofactor. Throws Unfactorable if
// the cofactor left after trial division exceeds 64 bits.
std::vector<std::pair<ExactInt, unsigned>> factor_positive(const ExactInt& n);

// All primes <= limit, Eratosthenes.
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

} // namespace avgorder
