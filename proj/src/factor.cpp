#include "avgorder/factor.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "avgorder/errors.hpp"

namespace avgorder {

namespace {

constexpr std::uint32_t kTrialDivisionBound = 1'000'000;

bool miller_rabin_round(std::uint64_t n, std::uint64_t d, unsigned s, std::uint64_t a) noexcept
{
    a %= n;
    if (a == 0) {
        return true;
    }
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) {
        return true;
    }
    for (unsigned i = 1; i < s; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) {
            return true;
        }
    }
    return false;
}

std::uint64_t rho_split(std::uint64_t n)
{
    if (n % 2 == 0) {
        return 2;
    }
    // Brent's cycle detection with batched gcds.
    for (std::uint64_t c = 1;; ++c) {
        auto f = [&](std::uint64_t x) { return (mul_mod(x, x, n) + c) % n; };
        std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
        std::uint64_t r = 1;
        constexpr std::uint64_t m = 128;
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) {
                y = f(y);
            }
            std::uint64_t k = 0;
            do {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) {
            return g;
        }
    }
}

void factor_into(std::uint64_t n, std::map<std::uint64_t, unsigned>& out)
{
    if (n == 1) {
        return;
    }
    if (is_prime_u64(n)) {
        ++out[n];
        return;
    }
    std::uint64_t d = rho_split(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept
{
    if (m <= (std::uint64_t{1} << 32)) {
        return (a * b) % m;
    }
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t m) noexcept
{
    std::uint64_t result = 1 % m;
    base %= m;
    while (exponent != 0) {
        if (exponent & 1) {
            result = mul_mod(result, base, m);
        }
        base = mul_mod(base, base, m);
        exponent >>= 1;
    }
    return result;
}

bool is_prime_u64(std::uint64_t n) noexcept
{
    if (n < 2) {
        return false;
    }
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) {
            return n == p;
        }
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (!miller_rabin_round(n, d, s, a)) {
            return false;
        }
    }
    return true;
}

bool is_prime(const ExactInt& n)
{
    if (sgn(n) <= 0) {
        return false;
    }
    if (fits_u64(n)) {
        return is_prime_u64(to_u64(n));
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

std::vector<PrimePower> factor_u64(std::uint64_t n)
{
    std::map<std::uint64_t, unsigned> acc;
    for (std::uint64_t p = 2; p < 64 && p * p <= n; ++p) {
        while (n % p == 0) {
            n /= p;
            ++acc[p];
        }
    }
    factor_into(n, acc);
    return {acc.begin(), acc.end()};
}

std::vector<std::pair<ExactInt, unsigned>> factor_positive(const ExactInt& n)
{
    if (sgn(n) <= 0) {
        throw Error(ErrorKind::InvalidArgument, "factor_positive needs n > 0");
    }
    static const std::vector<std::uint32_t> small_primes = primes_up_to(kTrialDivisionBound);

    std::vector<std::pair<ExactInt, unsigned>> out;
    ExactInt rest = n;
    for (std::uint32_t p : small_primes) {
        if (rest == 1) {
            break;
        }
        if (ExactInt(p) * p > rest) {
            break;
        }
        unsigned e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++e;
        }
        if (e != 0) {
            out.emplace_back(ExactInt(p), e);
        }
    }
    if (rest != 1) {
        if (!fits_u64(rest)) {
            throw Error(ErrorKind::Unfactorable,
                        "cofactor " + rest.get_str() + " exceeds 64 bits after trial division");
        }
        for (auto [q, e] : factor_u64(to_u64(rest))) {
            out.emplace_back(to_exact(q), e);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit)
{
    std::vector<std::uint32_t> primes;
    if (limit < 2) {
        return primes;
    }
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) {
            continue;
        }
        primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) {
            composite[j] = true;
        }
    }
    return primes;
}

} // namespace avgorder
