#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "avgorder/exact.hpp"

namespace avgorder {

// Dense row-major matrix over Z.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    ExactInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const ExactInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntMatrix operator*(const IntMatrix& rhs) const;
    bool operator==(const IntMatrix& rhs) const = default;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    // row[target] += factor * row[source]
    void add_row_multiple(std::size_t target, std::size_t source, const ExactInt& factor);
    // col[target] += factor * col[source]
    void add_col_multiple(std::size_t target, std::size_t source, const ExactInt& factor);
    void negate_row(std::size_t i);
    void negate_col(std::size_t j);

    // Keeps the first n columns.
    IntMatrix leading_columns(std::size_t n) const;

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<ExactInt> data_;
};

// Fraction-free (Bareiss) determinant of a square matrix.
ExactInt determinant(const IntMatrix& m);

// Lower column-echelon (Hermite) form by unimodular column operations. The
// returned matrix has the same rows and `rank` columns spanning the same
// lattice as the columns of `m`; pivots are positive and entries left of a
// pivot are reduced into [0, pivot).
IntMatrix column_hermite_basis(const IntMatrix& m);

struct SmithDecomposition {
    IntMatrix left;   // U, rows x rows, unimodular
    IntMatrix diagonal; // D = U * A * V
    IntMatrix right;  // V, cols x cols, unimodular
    std::vector<ExactInt> divisors; // d_1 | d_2 | ... (nonzero ones only)
};

SmithDecomposition smith_normal_form(const IntMatrix& a);

} // namespace avgorder
