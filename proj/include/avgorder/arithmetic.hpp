#pragma once

#include <cstdint>
#include <vector>

#include "avgorder/exact.hpp"

namespace avgorder {

// J_t(k) = k^t prod_{l | k} (1 - l^{-t}).
ExactInt jordan_totient(unsigned t, std::uint64_t k);

std::uint64_t euler_phi(std::uint64_t k);
int moebius(std::uint64_t k);
std::uint64_t radical(std::uint64_t k);
unsigned distinct_prime_count(std::uint64_t k);

// sigma_t(n) = sum_{d | n} d^t.
ExactInt divisor_power_sum(unsigned t, std::uint64_t n);

// Linear-sieve tables of mu, phi, omega, rad and smallest prime factor for n <= limit.
class ArithmeticTable {
public:
    explicit ArithmeticTable(std::uint32_t limit);

    std::uint32_t limit() const noexcept { return limit_; }
    int mu(std::uint32_t n) const { return mu_[n]; }
    std::uint32_t phi(std::uint32_t n) const { return phi_[n]; }
    unsigned omega(std::uint32_t n) const { return omega_[n]; }
    std::uint32_t rad(std::uint32_t n) const { return rad_[n]; }
    std::uint32_t smallest_prime_factor(std::uint32_t n) const { return spf_[n]; }

    // Distinct prime factors of n, ascending.
    std::vector<std::uint32_t> prime_divisors(std::uint32_t n) const;

private:
    std::uint32_t limit_;
    std::vector<std::int8_t> mu_;
    std::vector<std::uint32_t> phi_;
    std::vector<std::uint8_t> omega_;
    std::vector<std::uint32_t> rad_;
    std::vector<std::uint32_t> spf_;
};

} // namespace avgorder
