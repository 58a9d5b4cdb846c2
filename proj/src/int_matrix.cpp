#include "avgorder/int_matrix.hpp"

#include <sstream>
#include <utility>

#include "avgorder/errors.hpp"

namespace avgorder {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, ExactInt(0))
{
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1;
    }
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const
{
    if (cols_ != rhs.rows_) {
        throw Error(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
    }
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const ExactInt& a = (*this)(i, k);
            if (a == 0) {
                continue;
            }
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                out(i, j) += a * rhs(k, j);
            }
        }
    }
    return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b)
{
    if (a == b) {
        return;
    }
    for (std::size_t j = 0; j < cols_; ++j) {
        std::swap((*this)(a, j), (*this)(b, j));
    }
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b)
{
    if (a == b) {
        return;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        std::swap((*this)(i, a), (*this)(i, b));
    }
}

void IntMatrix::add_row_multiple(std::size_t target, std::size_t source, const ExactInt& factor)
{
    if (factor == 0) {
        return;
    }
    for (std::size_t j = 0; j < cols_; ++j) {
        (*this)(target, j) += factor * (*this)(source, j);
    }
}

void IntMatrix::add_col_multiple(std::size_t target, std::size_t source, const ExactInt& factor)
{
    if (factor == 0) {
        return;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        (*this)(i, target) += factor * (*this)(i, source);
    }
}

void IntMatrix::negate_row(std::size_t i)
{
    for (std::size_t j = 0; j < cols_; ++j) {
        (*this)(i, j) = -(*this)(i, j);
    }
}

void IntMatrix::negate_col(std::size_t j)
{
    for (std::size_t i = 0; i < rows_; ++i) {
        (*this)(i, j) = -(*this)(i, j);
    }
}

IntMatrix IntMatrix::leading_columns(std::size_t n) const
{
    IntMatrix out(rows_, n);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out(i, j) = (*this)(i, j);
        }
    }
    return out;
}

std::string IntMatrix::to_string() const
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j) {
            os << (j ? " " : "") << (*this)(i, j).get_str();
        }
    }
    os << ']';
    return os.str();
}

ExactInt determinant(const IntMatrix& input)
{
    if (input.rows() != input.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
    }
    const std::size_t n = input.rows();
    if (n == 0) {
        return 1;
    }
    IntMatrix m = input;
    int sign = 1;
    ExactInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t swap_with = k + 1;
            while (swap_with < n && m(swap_with, k) == 0) {
                ++swap_with;
            }
            if (swap_with == n) {
                return 0;
            }
            m.swap_rows(k, swap_with);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                ExactInt v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = v;
            }
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

IntMatrix column_hermite_basis(const IntMatrix& input)
{
    IntMatrix m = input;
    std::size_t pivot_col = 0;
    std::vector<std::size_t> pivot_rows;
    for (std::size_t i = 0; i < m.rows() && pivot_col < m.cols(); ++i) {
        // Euclid across columns pivot_col.. until only one nonzero entry remains in row i.
        while (true) {
            std::size_t best = m.cols();
            for (std::size_t j = pivot_col; j < m.cols(); ++j) {
                if (m(i, j) != 0 && (best == m.cols() || abs(m(i, j)) < abs(m(i, best)))) {
                    best = j;
                }
            }
            if (best == m.cols()) {
                break;
            }
            m.swap_cols(pivot_col, best);
            bool reduced = true;
            for (std::size_t j = pivot_col + 1; j < m.cols(); ++j) {
                if (m(i, j) == 0) {
                    continue;
                }
                ExactInt q;
                mpz_fdiv_q(q.get_mpz_t(), m(i, j).get_mpz_t(), m(i, pivot_col).get_mpz_t());
                m.add_col_multiple(j, pivot_col, -q);
                if (m(i, j) != 0) {
                    reduced = false;
                }
            }
            if (reduced) {
                break;
            }
        }
        if (pivot_col < m.cols() && m(i, pivot_col) != 0) {
            if (m(i, pivot_col) < 0) {
                m.negate_col(pivot_col);
            }
            for (std::size_t j = 0; j < pivot_col; ++j) {
                ExactInt q;
                mpz_fdiv_q(q.get_mpz_t(), m(i, j).get_mpz_t(), m(i, pivot_col).get_mpz_t());
                m.add_col_multiple(j, pivot_col, -q);
            }
            pivot_rows.push_back(i);
            ++pivot_col;
        }
    }
    return m.leading_columns(pivot_col);
}

namespace {

bool clear_pivot_row_and_col(IntMatrix& d, IntMatrix& u, IntMatrix& v, std::size_t k)
{
    // Returns true once row k and column k are zero outside the pivot.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = k + 1; i < d.rows(); ++i) {
            if (d(i, k) == 0) {
                continue;
            }
            ExactInt q;
            mpz_fdiv_q(q.get_mpz_t(), d(i, k).get_mpz_t(), d(k, k).get_mpz_t());
            d.add_row_multiple(i, k, -q);
            u.add_row_multiple(i, k, -q);
            if (d(i, k) != 0) {
                d.swap_rows(i, k);
                u.swap_rows(i, k);
                changed = true;
            }
        }
        for (std::size_t j = k + 1; j < d.cols(); ++j) {
            if (d(k, j) == 0) {
                continue;
            }
            ExactInt q;
            mpz_fdiv_q(q.get_mpz_t(), d(k, j).get_mpz_t(), d(k, k).get_mpz_t());
            d.add_col_multiple(j, k, -q);
            v.add_col_multiple(j, k, -q);
            if (d(k, j) != 0) {
                d.swap_cols(j, k);
                v.swap_cols(j, k);
                changed = true;
            }
        }
    }
    return true;
}

} // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a)
{
    IntMatrix d = a;
    IntMatrix u = IntMatrix::identity(a.rows());
    IntMatrix v = IntMatrix::identity(a.cols());
    std::vector<ExactInt> divisors;

    const std::size_t limit = std::min(a.rows(), a.cols());
    for (std::size_t k = 0; k < limit; ++k) {
        while (true) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            std::size_t bi = d.rows(), bj = d.cols();
            for (std::size_t i = k; i < d.rows(); ++i) {
                for (std::size_t j = k; j < d.cols(); ++j) {
                    if (d(i, j) != 0 && (bi == d.rows() || abs(d(i, j)) < abs(d(bi, bj)))) {
                        bi = i;
                        bj = j;
                    }
                }
            }
            if (bi == d.rows()) {
                break;
            }
            d.swap_rows(k, bi);
            u.swap_rows(k, bi);
            d.swap_cols(k, bj);
            v.swap_cols(k, bj);
            clear_pivot_row_and_col(d, u, v, k);

            // Enforce d_k | every entry of the trailing block.
            std::size_t bad_row = d.rows();
            for (std::size_t i = k + 1; i < d.rows() && bad_row == d.rows(); ++i) {
                for (std::size_t j = k + 1; j < d.cols(); ++j) {
                    if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(k, k).get_mpz_t())) {
                        bad_row = i;
                        break;
                    }
                }
            }
            if (bad_row == d.rows()) {
                break;
            }
            d.add_row_multiple(k, bad_row, ExactInt(1));
            u.add_row_multiple(k, bad_row, ExactInt(1));
        }
        if (d(k, k) == 0) {
            break;
        }
        if (d(k, k) < 0) {
            d.negate_row(k);
            u.negate_row(k);
        }
        divisors.push_back(d(k, k));
    }
    return {std::move(u), std::move(d), std::move(v), std::move(divisors)};
}

} // namespace avgorder
