#include "avgorder/exact.hpp"

namespace avgorder {

ExactInt pow_int(const ExactInt& base, unsigned long exponent)
{
    ExactInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
    return out;
}

ExactInt pow_int(std::uint64_t base, unsigned long exponent)
{
    return pow_int(to_exact(base), exponent);
}

ExactRational pow_rational(std::uint64_t base, long exponent)
{
    if (exponent >= 0) {
        return ExactRational(pow_int(base, static_cast<unsigned long>(exponent)));
    }
    ExactRational out(ExactInt(1), pow_int(base, static_cast<unsigned long>(-exponent)));
    out.canonicalize();
    return out;
}

unsigned valuation(const ExactInt& n, std::uint64_t p)
{
    ExactInt rest = abs(n);
    ExactInt prime = to_exact(p);
    unsigned v = 0;
    while (rest != 0 && mpz_divisible_p(rest.get_mpz_t(), prime.get_mpz_t())) {
        mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), prime.get_mpz_t());
        ++v;
    }
    return v;
}

unsigned valuation(std::uint64_t n, std::uint64_t p)
{
    unsigned v = 0;
    while (n != 0 && n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

ExactInt to_exact(std::uint64_t value)
{
    ExactInt out;
    mpz_import(out.get_mpz_t(), 1, 1, sizeof(value), 0, 0, &value);
    return out;
}

bool fits_u64(const ExactInt& value)
{
    return sgn(value) >= 0 && mpz_sizeinbase(value.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const ExactInt& value)
{
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, value.get_mpz_t());
    return out;
}

std::string to_string(const ExactInt& value) { return value.get_str(); }

std::string to_string(const ExactRational& value) { return value.get_str(); }

} // namespace avgorder
