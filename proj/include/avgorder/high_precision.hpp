#pragma once

#include <string>

#include <boost/multiprecision/mpfr.hpp>

#include "avgorder/exact.hpp"

namespace avgorder {

using HighPrecisionReal = boost::multiprecision::mpfr_float;

// Sets the default mpfr_float precision (decimal digits) for values created in
// this scope and restores the previous one on exit. The default is process
// global, so high-precision evaluation is single-threaded.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned digits10);
    ~PrecisionScope();

    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned previous_;
};

HighPrecisionReal to_real(const ExactRational& q);
HighPrecisionReal to_real(const ExactInt& z);

// Fixed-point decimal string rounded to `digits` places after the point.
std::string format_fixed(const HighPrecisionReal& x, unsigned digits);
// Same, truncated toward zero.
std::string format_truncated(const HighPrecisionReal& x, unsigned digits);

// Decimal scientific notation with `significant` digits after the point.
std::string format_scientific(const HighPrecisionReal& x, unsigned significant);

// 10^{-digits} at current precision.
HighPrecisionReal power_of_ten(int exponent);

// li(x) = integral_2^x dt / log t, via li(x) = Ei(log x) - Ei(log 2).
HighPrecisionReal log_integral(const HighPrecisionReal& x);
double log_integral(double x);

// log zeta(s) for integer s >= 2.
HighPrecisionReal log_zeta(unsigned long s);

// P(k) = sum_p p^{-k} = sum_{m >= 1} mu(m)/m log zeta(k m), k >= 2, to the
// current precision.
HighPrecisionReal prime_zeta(unsigned k);

} // namespace avgorder
