#include "avgorder/arithmetic.hpp"

#include "avgorder/errors.hpp"
#include "avgorder/factor.hpp"

namespace avgorder {

ExactInt jordan_totient(unsigned t, std::uint64_t k)
{
    if (t == 0 || k == 0) {
        throw Error(ErrorKind::InvalidArgument, "jordan_totient needs t >= 1 and k >= 1");
    }
    ExactInt out = 1;
    for (auto [p, e] : factor_u64(k)) {
        // J_t(p^e) = p^{t e} - p^{t (e-1)}
        out *= pow_int(p, t * e) - pow_int(p, t * (e - 1));
    }
    return out;
}

std::uint64_t euler_phi(std::uint64_t k)
{
    std::uint64_t out = k;
    for (auto [p, e] : factor_u64(k)) {
        out = out / p * (p - 1);
    }
    return out;
}

int moebius(std::uint64_t k)
{
    int mu = 1;
    for (auto [p, e] : factor_u64(k)) {
        if (e > 1) {
            return 0;
        }
        mu = -mu;
    }
    return mu;
}

std::uint64_t radical(std::uint64_t k)
{
    std::uint64_t out = 1;
    for (auto [p, e] : factor_u64(k)) {
        out *= p;
    }
    return out;
}

unsigned distinct_prime_count(std::uint64_t k)
{
    return static_cast<unsigned>(factor_u64(k).size());
}

ExactInt divisor_power_sum(unsigned t, std::uint64_t n)
{
    ExactInt out = 1;
    for (auto [p, e] : factor_u64(n)) {
        ExactInt local = 0;
        for (unsigned i = 0; i <= e; ++i) {
            local += pow_int(p, t * i);
        }
        out *= local;
    }
    return out;
}

ArithmeticTable::ArithmeticTable(std::uint32_t limit)
    : limit_(limit), mu_(limit + 1, 0), phi_(limit + 1, 0), omega_(limit + 1, 0), rad_(limit + 1, 0),
      spf_(limit + 1, 0)
{
    std::vector<std::uint32_t> primes;
    if (limit >= 1) {
        mu_[1] = 1;
        phi_[1] = 1;
        rad_[1] = 1;
        spf_[1] = 1;
    }
    for (std::uint32_t n = 2; n <= limit; ++n) {
        if (spf_[n] == 0) {
            spf_[n] = n;
            primes.push_back(n);
            mu_[n] = -1;
            phi_[n] = n - 1;
            omega_[n] = 1;
            rad_[n] = n;
        }
        for (std::uint32_t p : primes) {
            const std::uint64_t m = static_cast<std::uint64_t>(p) * n;
            if (p > spf_[n] || m > limit) {
                break;
            }
            spf_[m] = p;
            if (p == spf_[n]) {
                mu_[m] = 0;
                phi_[m] = phi_[n] * p;
                omega_[m] = omega_[n];
                rad_[m] = rad_[n];
            } else {
                mu_[m] = static_cast<std::int8_t>(-mu_[n]);
                phi_[m] = phi_[n] * (p - 1);
                omega_[m] = static_cast<std::uint8_t>(omega_[n] + 1);
                rad_[m] = rad_[n] * p;
            }
        }
    }
}

std::vector<std::uint32_t> ArithmeticTable::prime_divisors(std::uint32_t n) const
{
    std::vector<std::uint32_t> out;
    while (n > 1) {
        const std::uint32_t p = spf_[n];
        out.push_back(p);
        while (n % p == 0) {
            n /= p;
        }
    }
    return out;
}

} // namespace avgorder
