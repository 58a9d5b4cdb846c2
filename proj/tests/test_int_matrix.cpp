#include <doctest.h>

#include "avgorder/int_matrix.hpp"
#include "avgorder/oracles.hpp"

using namespace avgorder;

namespace {

IntMatrix make(std::size_t rows, std::size_t cols, std::initializer_list<long> entries)
{
    IntMatrix m(rows, cols);
    auto it = entries.begin();
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            m(i, j) = *it++;
        }
    }
    return m;
}

void check_smith(const IntMatrix& a, const std::vector<long>& expected)
{
    const auto snf = smith_normal_form(a);
    CHECK(snf.left * a * snf.right == snf.diagonal);
    CHECK(abs(determinant(snf.left)) == 1);
    CHECK(abs(determinant(snf.right)) == 1);
    REQUIRE(snf.divisors.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(snf.divisors[i] == expected[i]);
        CHECK(snf.diagonal(i, i) == expected[i]);
    }
}

} // namespace

TEST_SUITE("int_matrix") {

TEST_CASE("products and determinants")
{
    const auto a = make(2, 2, {1, 2, 3, 4});
    CHECK(a * IntMatrix::identity(2) == a);
    CHECK(a * a == make(2, 2, {7, 10, 15, 22}));
    CHECK(determinant(a) == -2);
    CHECK(determinant(make(3, 3, {2, 0, 1, 1, 3, 2, 1, 1, 2})) == 6);
    CHECK(determinant(make(3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9})) == 0);
    CHECK(determinant(make(3, 3, {0, 0, 1, 0, 1, 0, 1, 0, 0})) == -1);
}

TEST_CASE("row and column operations")
{
    auto m = make(2, 3, {1, 2, 3, 4, 5, 6});
    m.add_row_multiple(1, 0, -4);
    CHECK(m == make(2, 3, {1, 2, 3, 0, -3, -6}));
    m.add_col_multiple(2, 0, -3);
    CHECK(m == make(2, 3, {1, 2, 0, 0, -3, -6}));
    m.swap_cols(0, 2);
    m.negate_row(1);
    CHECK(m == make(2, 3, {0, 2, 1, 6, 3, 0}));
    CHECK(m.leading_columns(1) == make(2, 1, {0, 6}));
}

TEST_CASE("smith normal form of known matrices")
{
    check_smith(make(1, 1, {2}), {2});
    check_smith(make(2, 2, {2, 0, 0, 3}), {1, 6});
    check_smith(make(2, 2, {2, 4, 6, 8}), {2, 4});
    check_smith(make(3, 2, {1, 0, 2, 2, -4, 5}), {1, 1});
    check_smith(make(3, 3, {2, 4, 4, -6, 6, 12, 10, -4, -16}), {2, 6, 12});
    check_smith(make(2, 3, {6, 4, 10, 4, 6, 8}), {2, 2});
    // Rank-deficient input keeps only the nonzero divisors.
    check_smith(make(2, 2, {1, 2, 2, 4}), {1});
    check_smith(make(2, 2, {0, 0, 0, 0}), {});
}

TEST_CASE("elementary divisor products are minor gcds")
{
    const auto a = make(3, 3, {2, 4, 4, -6, 6, 12, 10, -4, -16});
    CHECK(oracle::gcd_of_minors(a, 1) == 2);
    CHECK(oracle::gcd_of_minors(a, 2) == 12);
    CHECK(oracle::gcd_of_minors(a, 3) == 144);
}

TEST_CASE("column hermite basis spans the column lattice")
{
    // Columns (2,0), (4,6), (0,3): lattice generated by (2,0) and (0,3).
    const auto a = make(2, 3, {2, 4, 0, 0, 6, 3});
    const auto h = column_hermite_basis(a);
    REQUIRE(h.cols() == 2);
    CHECK(oracle::gcd_of_minors(h, 2) == oracle::gcd_of_minors(a, 2));
    CHECK(abs(determinant(h)) == 6);
    // Dependent columns collapse.
    const auto d = column_hermite_basis(make(2, 3, {1, 0, 1, 0, 1, 1}));
    CHECK(d.cols() == 2);
    CHECK(abs(determinant(d)) == 1);
}

}
