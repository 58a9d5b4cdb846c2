#include <doctest.h>

#include "avgorder/errors.hpp"
#include "avgorder/oracles.hpp"
#include "avgorder/subgroup.hpp"
#include "test_support.hpp"

using namespace avgorder;

TEST_SUITE("subgroup") {

TEST_CASE("parse generators")
{
    CHECK(parse_generator("12").exponents() == std::map<std::uint64_t, long>{{2, 2}, {3, 1}});
    CHECK(parse_generator("3/2").exponents() == std::map<std::uint64_t, long>{{2, -1}, {3, 1}});
    CHECK(parse_generator("6/4").exponents() == std::map<std::uint64_t, long>{{2, -1}, {3, 1}});
    CHECK(parse_generator("1").is_one());
    CHECK(parse_generator(" 7 ").value() == 7);
    CHECK(parse_generator("2/3").value() == ExactRational(2, 3));
    CHECK(parse_generator("3/2").to_string() == "3/2");

    CHECK(test::thrown_kind([] { parse_generator("-5"); }) == ErrorKind::NonPositive);
    CHECK(test::thrown_kind([] { parse_generator("3/-2"); }) == ErrorKind::NonPositive);
    CHECK(test::thrown_kind([] { parse_generator("0"); }) == ErrorKind::ZeroGenerator);
    CHECK(test::thrown_kind([] { parse_generator("5/0"); }) == ErrorKind::ZeroGenerator);
    CHECK(test::thrown_kind([] { parse_generator("abc"); }) == ErrorKind::ParseError);
    CHECK(test::thrown_kind([] { parse_generator(""); }) == ErrorKind::ParseError);
    CHECK(test::thrown_kind([] { parse_generator("1/2/3"); }) == ErrorKind::ParseError);
    CHECK(test::thrown_kind([] { parse_generator_list("2,,3"); }) == ErrorKind::ParseError);
    CHECK(parse_generator_list("2, 3/5,7").size() == 3);
}

TEST_CASE("presentation of <2,3>")
{
    const auto g = SubgroupPresentation::parse("2,3");
    CHECK(g.support() == std::vector<std::uint64_t>{2, 3});
    CHECK(g.sigma() == 6);
    CHECK(g.rank() == 2);
    CHECK(g.basis_matrix() == IntMatrix::identity(2));
    CHECK(g.deltas()[1] == 1);
    CHECK(g.deltas()[2] == 1);
    CHECK(g.group_order_mod_kth_powers(6) == 36);
    CHECK(g.local_order(5, 2) == 625);
    CHECK(g.stabilization_exponent(2) == 0);
}

TEST_CASE("dependent generators")
{
    const auto g = SubgroupPresentation::parse("2,3,6");
    CHECK(g.rank() == 2);
    CHECK(g.deltas().back() == 1);
    CHECK(g.basis_matrix() == SubgroupPresentation::parse("2,3").basis_matrix());

    const auto h = SubgroupPresentation::parse("12,18");
    CHECK(h.rank() == 2);
    // 12 = 2^2 3, 18 = 2 3^2: det 3
    CHECK(h.deltas().back() == 3);
}

TEST_CASE("presentation of <4>")
{
    const auto g = SubgroupPresentation::parse("4");
    CHECK(g.rank() == 1);
    CHECK(g.basis_matrix()(0, 0) == 2);
    CHECK(g.deltas()[1] == 2);
    CHECK(g.group_order_mod_kth_powers(2) == 1);
    CHECK(g.group_order_mod_kth_powers(8) == 4);
    CHECK(g.local_order(2, 3) == 4);
    CHECK(g.local_order_exponent(2, 3) == 2);
    CHECK(g.local_order(2, 0) == 1);
    CHECK(g.stabilization_exponent(2) == 1);
}

TEST_CASE("<4,27> has elementary divisors 1, 6")
{
    const auto g = SubgroupPresentation::parse("4,27");
    CHECK(g.elementary_divisors() == std::vector<ExactInt>{1, 6});
    CHECK(g.stabilization_exponent(3) == 1);
    CHECK(g.stabilization_exponent(2) == 1);
    CHECK(g.stabilization_exponent(5) == 0);
    CHECK(g.delta_valuation(2, 3) == 1);
}

TEST_CASE("group order mod kth powers matches the lattice image")
{
    for (const char* text : {"2,3", "4", "4,27", "12,18", "3/2,5", "2/3,6/5", "16,3"}) {
        const auto g = SubgroupPresentation::parse(text);
        CHECK(g.group_order_mod_kth_powers(1) == 1);
        for (std::uint64_t m = 2; m <= 24; ++m) {
            CHECK(g.group_order_mod_kth_powers(to_exact(m)) == to_exact(oracle::image_order_mod(g.basis_matrix(), m)));
        }
    }
}

TEST_CASE("rational generators")
{
    const auto g = SubgroupPresentation::parse("3/2,5");
    CHECK(g.support() == std::vector<std::uint64_t>{2, 3, 5});
    CHECK(g.rank() == 2);
    const auto basis = g.basis_generators();
    CHECK(basis.size() == 2);
}

TEST_CASE("presentation errors")
{
    CHECK(test::thrown_kind([] { SubgroupPresentation::parse("1"); }) == ErrorKind::TrivialGroup);
    CHECK(test::thrown_kind([] { SubgroupPresentation::parse("1,1/1"); }) == ErrorKind::TrivialGroup);
    // 25 distinct primes in the support.
    const std::string many =
        "2,3,5,7,11,13,17,19,23,29,31,37,41,43,47,53,59,61,67,71,73,79,83,89,97";
    CHECK(test::thrown_kind([&] { SubgroupPresentation::parse(many); }) == ErrorKind::SupportTooLarge);
    CHECK_NOTHROW(SubgroupPresentation::parse(many.substr(0, many.rfind(','))));
}

}
