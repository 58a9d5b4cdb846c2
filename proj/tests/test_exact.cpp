#include <doctest.h>

#include "avgorder/arithmetic.hpp"
#include "avgorder/errors.hpp"
#include "avgorder/exact.hpp"
#include "avgorder/factor.hpp"
#include "test_support.hpp"

using namespace avgorder;

TEST_SUITE("exact") {

TEST_CASE("powers and valuations")
{
    CHECK(pow_int(3, 4) == 81);
    CHECK(pow_int(ExactInt(-2), 3) == -8);
    CHECK(pow_rational(2, -3) == ExactRational(1, 8));
    CHECK(pow_rational(5, 0) == 1);
    CHECK(valuation(ExactInt(96), 2) == 5);
    CHECK(valuation(std::uint64_t{81}, 3) == 4);
    CHECK(valuation(std::uint64_t{7}, 2) == 0);
    CHECK(fits_u64(to_exact(~std::uint64_t{0})));
    CHECK_FALSE(fits_u64(pow_int(2, 64)));
    CHECK(to_u64(to_exact(123456789012345ULL)) == 123456789012345ULL);
}

TEST_CASE("jordan totient")
{
    CHECK(jordan_totient(1, 12) == 4);
    CHECK(jordan_totient(2, 6) == 24);
    for (unsigned t = 1; t <= 5; ++t) {
        CHECK(jordan_totient(t, 1) == 1);
    }
    // sum_{d | n} J_t(d) = n^t
    for (std::uint64_t n = 1; n <= 60; ++n) {
        ExactInt sum = 0;
        for (std::uint64_t d = 1; d <= n; ++d) {
            if (n % d == 0) {
                sum += jordan_totient(3, d);
            }
        }
        CHECK(sum == pow_int(n, 3));
    }
}

TEST_CASE("multiplicative functions against the sieve table")
{
    const ArithmeticTable table(2000);
    for (std::uint32_t n = 1; n <= 2000; ++n) {
        CHECK(table.phi(n) == euler_phi(n));
        CHECK(table.mu(n) == moebius(n));
        CHECK(table.rad(n) == radical(n));
        CHECK(table.omega(n) == distinct_prime_count(n));
    }
    CHECK(table.prime_divisors(360) == std::vector<std::uint32_t>{2, 3, 5});
    CHECK(divisor_power_sum(1, 12) == 28);
    CHECK(divisor_power_sum(2, 6) == 50);
}

TEST_CASE("modular arithmetic")
{
    CHECK(pow_mod(2, 10, 1000) == 24);
    CHECK(pow_mod(3, 0, 7) == 1);
    const std::uint64_t big = 18446744073709551557ULL; // largest 64-bit prime
    CHECK(pow_mod(5, big - 1, big) == 1);
    CHECK(mul_mod(big - 1, big - 1, big) == 1);
}

TEST_CASE("primality and factorization")
{
    CHECK(is_prime_u64(2));
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(561));
    CHECK(is_prime_u64(18446744073709551557ULL));
    CHECK_FALSE(is_prime_u64(3215031751ULL));
    CHECK(factor_u64(1).empty());
    CHECK(factor_u64(360) == std::vector<PrimePower>{{2, 3}, {3, 2}, {5, 1}});
    CHECK(factor_u64(600851475143ULL) == std::vector<PrimePower>{{71, 1}, {839, 1}, {1471, 1}, {6857, 1}});
    const std::uint64_t semiprime = 4294967291ULL * 4294967279ULL;
    CHECK(factor_u64(semiprime) == std::vector<PrimePower>{{4294967279ULL, 1}, {4294967291ULL, 1}});

    const auto f = factor_positive(ExactInt("1000000000000000000000000000000"));
    REQUIRE(f.size() == 2);
    CHECK(f[0].first == 2);
    CHECK(f[0].second == 30);
    CHECK(f[1].first == 5);

    // Two 64-bit-sized prime factors leave a cofactor beyond 64 bits.
    const ExactInt hard = ExactInt("18446744073709551557") * ExactInt("18446744073709551533");
    CHECK(test::thrown_kind([&] { factor_positive(hard); }) == ErrorKind::Unfactorable);

    const auto primes = primes_up_to(100);
    CHECK(primes.size() == 25);
    CHECK(primes.back() == 97);
    CHECK(primes_up_to(1).empty());
}

}
