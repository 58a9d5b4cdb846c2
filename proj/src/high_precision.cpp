#include "avgorder/high_precision.hpp"

#include <cmath>
#include <cstdio>

#include <mpfr.h>

#include "avgorder/arithmetic.hpp"
#include "avgorder/errors.hpp"

namespace avgorder {

PrecisionScope::PrecisionScope(unsigned digits10)
    : previous_(HighPrecisionReal::default_precision())
{
    HighPrecisionReal::default_precision(digits10);
}

PrecisionScope::~PrecisionScope() { HighPrecisionReal::default_precision(previous_); }

HighPrecisionReal to_real(const ExactRational& q)
{
    HighPrecisionReal out;
    mpfr_set_q(out.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return out;
}

HighPrecisionReal to_real(const ExactInt& z)
{
    HighPrecisionReal out;
    mpfr_set_z(out.backend().data(), z.get_mpz_t(), MPFR_RNDN);
    return out;
}

namespace {

std::string format_with(const char* format, const HighPrecisionReal& x, unsigned digits)
{
    char* buffer = nullptr;
    const int n = mpfr_asprintf(&buffer, format, static_cast<int>(digits), x.backend().data());
    if (n < 0 || buffer == nullptr) {
        throw Error(ErrorKind::InvalidArgument, "mpfr_asprintf failed");
    }
    std::string out(buffer);
    mpfr_free_str(buffer);
    return out;
}

} // namespace

std::string format_fixed(const HighPrecisionReal& x, unsigned digits)
{
    return format_with("%.*Rf", x, digits);
}

std::string format_truncated(const HighPrecisionReal& x, unsigned digits)
{
    return format_with("%.*RZf", x, digits);
}

std::string format_scientific(const HighPrecisionReal& x, unsigned significant)
{
    return format_with("%.*Re", x, significant);
}

HighPrecisionReal power_of_ten(int exponent)
{
    HighPrecisionReal ten = 10;
    return pow(ten, exponent);
}

HighPrecisionReal log_integral(const HighPrecisionReal& x)
{
    if (x < 2) {
        throw Error(ErrorKind::DomainError, "li(x) needs x >= 2");
    }
    if (x == 2) {
        return HighPrecisionReal(0);
    }
    HighPrecisionReal log_x = log(x);
    HighPrecisionReal log_2 = log(HighPrecisionReal(2));
    HighPrecisionReal ei_x, ei_2;
    mpfr_eint(ei_x.backend().data(), log_x.backend().data(), MPFR_RNDN);
    mpfr_eint(ei_2.backend().data(), log_2.backend().data(), MPFR_RNDN);
    return ei_x - ei_2;
}

double log_integral(double x)
{
    PrecisionScope scope(30);
    return static_cast<double>(log_integral(HighPrecisionReal(x)));
}

HighPrecisionReal log_zeta(unsigned long s)
{
    HighPrecisionReal z;
    mpfr_zeta_ui(z.backend().data(), s, MPFR_RNDN);
    return log(z);
}

HighPrecisionReal prime_zeta(unsigned k)
{
    if (k < 2) {
        throw Error(ErrorKind::DomainError, "prime zeta needs k >= 2");
    }
    const HighPrecisionReal probe;
    const auto bits = static_cast<unsigned>(mpfr_get_prec(probe.backend().data()));
    // log zeta(s) ~ 2^{-s}; stop once k m exceeds the working precision in bits.
    const unsigned m_max = bits / k + 2;
    HighPrecisionReal sum = 0;
    for (unsigned m = 1; m <= m_max; ++m) {
        const int mu = moebius(m);
        if (mu == 0) {
            continue;
        }
        HighPrecisionReal term = log_zeta(static_cast<unsigned long>(k) * m) / m;
        if (mu > 0) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    return sum;
}

} // namespace avgorder
