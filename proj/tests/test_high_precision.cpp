#include <doctest.h>

#include <cmath>

#include "avgorder/high_precision.hpp"
#include "test_support.hpp"

using namespace avgorder;

namespace {

// Composite Simpson rule for the integral of 1/log t over [2, x], on u = log t.
double li_by_quadrature(double x, int panels)
{
    const double a = std::log(2.0);
    const double b = std::log(x);
    const double h = (b - a) / panels;
    const auto f = [](double u) { return std::exp(u) / u; };
    double sum = f(a) + f(b);
    for (int i = 1; i < panels; ++i) {
        sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return sum * h / 3.0;
}

} // namespace

TEST_SUITE("high_precision") {

TEST_CASE("logarithmic integral")
{
    PrecisionScope scope(40);
    CHECK(log_integral(HighPrecisionReal(2)) == 0);
    CHECK(log_integral(2.0) == 0.0);
    const double quad = li_by_quadrature(1e6, 200000);
    CHECK(std::abs(quad - 78626.503996) < 1e-5);
    CHECK(std::abs(test::to_double(log_integral(HighPrecisionReal(1000000))) - quad) < 1e-6);
    CHECK(std::abs(log_integral(1e6) - quad) < 1e-6);
    CHECK(format_fixed(log_integral(HighPrecisionReal(1000000)), 6) == "78626.503996");

    CHECK(test::thrown_kind([] { log_integral(HighPrecisionReal("1.5")); }) == ErrorKind::DomainError);
    CHECK(test::thrown_kind([] { log_integral(1.0); }) == ErrorKind::DomainError);
}

TEST_CASE("li(x) - x / log x is positive and increasing")
{
    double previous = 0.0;
    for (double x = 10.0; x < 1e12; x *= 3.7) {
        const double gap = log_integral(x) - x / std::log(x);
        CHECK(gap > 0.0);
        CHECK(gap > previous);
        previous = gap;
    }
}

TEST_CASE("prime zeta and log zeta")
{
    PrecisionScope scope(45);
    const HighPrecisionReal p2 = prime_zeta(2);
    CHECK(format_fixed(p2, 38) == "0.45224742004106549850654336483224793417");
    CHECK(format_fixed(prime_zeta(3), 38) == "0.17476263929944353642311331466570670098");
    const HighPrecisionReal pi = acos(HighPrecisionReal(-1));
    CHECK(abs(log_zeta(2) - log(pi * pi / 6)) < power_of_ten(-40));
}

TEST_CASE("decimal formatting")
{
    PrecisionScope scope(30);
    const HighPrecisionReal x("0.572360219087");
    CHECK(format_fixed(x, 10) == "0.5723602191");
    CHECK(format_truncated(x, 10) == "0.5723602190");
    CHECK(format_truncated(HighPrecisionReal(-x), 3) == "-0.572");
    CHECK(format_scientific(HighPrecisionReal("0.000123456"), 2) == "1.23e-04");
    CHECK(to_real(ExactRational(1, 4)) == HighPrecisionReal("0.25"));
    CHECK(format_fixed(to_real(ExactInt("123456789012345678901234567890")), 0) == "123456789012345678901234567890");
}

TEST_CASE("precision scope restores the default")
{
    const auto before = HighPrecisionReal::default_precision();
    {
        PrecisionScope scope(120);
        CHECK(HighPrecisionReal::default_precision() == 120);
        {
            PrecisionScope inner(20);
            CHECK(HighPrecisionReal::default_precision() == 20);
        }
        CHECK(HighPrecisionReal::default_precision() == 120);
    }
    CHECK(HighPrecisionReal::default_precision() == before);
}

}
