#include <doctest.h>

#include "avgorder/arithmetic.hpp"
#include "avgorder/kummer.hpp"
#include "avgorder/subgroup.hpp"

using namespace avgorder;

TEST_SUITE("kummer") {

TEST_CASE("degree examples")
{
    const auto two = SubgroupPresentation::parse("2");
    const auto two_three = SubgroupPresentation::parse("2,3");
    CHECK(kummer_degree(two, 1) == 1);
    CHECK(kummer_degree(two_three, 1) == 1);
    CHECK(kummer_degree(two, 8) == 16);
    CHECK(kummer_degree(two_three, 4) == 32);
    // Q(zeta_2, sqrt 2) has degree 2.
    CHECK(kummer_degree(two, 2) == 2);
    // sqrt 5 lies in Q(zeta_5) but Gamma~(5) is trivial for odd k; it is
    // only seen at k = 10, 20, ...: delta(5) = 5 | 10 and t_5 = 0.
    const auto five = SubgroupPresentation::parse("5");
    CHECK(kummer_degree(five, 5) == 20);
    CHECK(kummer_degree(five, 10) == 20);
}

TEST_CASE("cached degrees match the free function")
{
    for (const char* text : {"2", "4", "3/2,5", "16,3", "2,3,5,7"}) {
        const auto g = SubgroupPresentation::parse(text);
        const KummerDegree kummer(g);
        for (std::uint64_t k = 1; k <= 300; ++k) {
            CHECK(kummer.degree(k) == kummer_degree(g, k));
        }
    }
}

TEST_CASE("odd k has no entanglement")
{
    const auto g = SubgroupPresentation::parse("2,3,5");
    const KummerDegree kummer(g);
    for (std::uint64_t k = 1; k <= 999; k += 2) {
        CHECK(kummer.tilde_order(k) == 1);
        CHECK(kummer.degree(k) == to_exact(euler_phi(k)) * g.group_order_mod_kth_powers(to_exact(k)));
    }
}

TEST_CASE("degree divides phi(k) k^r")
{
    for (const char* text : {"2", "4", "4,27", "12,18", "2/3,6/5", "36,10"}) {
        const auto g = SubgroupPresentation::parse(text);
        const KummerDegree kummer(g);
        for (std::uint64_t k = 1; k <= 1000; ++k) {
            const ExactInt bound = to_exact(euler_phi(k)) * pow_int(k, g.rank());
            CHECK(bound % kummer.degree(k) == 0);
        }
    }
}

}
