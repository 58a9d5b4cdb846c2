#include "avgorder/oracles.hpp"

#include <algorithm>
#include <functional>

#include "avgorder/errors.hpp"

namespace avgorder::oracle {

namespace {

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn)
{
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) {
        idx[i] = i;
    }
    if (k > n) {
        return;
    }
    while (true) {
        fn(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) {
            --i;
        }
        if (i == 0) {
            return;
        }
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

} // namespace

ExactInt gcd_of_minors(const IntMatrix& a, std::size_t size)
{
    if (size == 0) {
        return 1;
    }
    ExactInt g = 0;
    for_each_subset(a.rows(), size, [&](const std::vector<std::size_t>& rows) {
        for_each_subset(a.cols(), size, [&](const std::vector<std::size_t>& cols) {
            IntMatrix minor(size, size);
            for (std::size_t i = 0; i < size; ++i) {
                for (std::size_t j = 0; j < size; ++j) {
                    minor(i, j) = a(rows[i], cols[j]);
                }
            }
            const ExactInt d = abs(determinant(minor));
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
        });
    });
    return g;
}

LatticeImage::LatticeImage(const IntMatrix& basis, std::uint64_t modulus)
    : modulus_(modulus), rows_(basis.rows())
{
    const auto m = static_cast<std::int64_t>(modulus);
    const std::size_t r = basis.cols();
    std::vector<std::int64_t> a(basis.rows() * r);
    for (std::size_t i = 0; i < basis.rows(); ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            a[i * r + j] = mod(basis(i, j).get_si(), m);
        }
    }
    std::vector<std::int64_t> c(r, 0), image(rows_);
    while (true) {
        for (std::size_t i = 0; i < rows_; ++i) {
            std::int64_t acc = 0;
            for (std::size_t j = 0; j < r; ++j) {
                acc += a[i * r + j] * c[j];
            }
            image[i] = acc % m;
        }
        codes_.push_back(encode(image));
        std::size_t j = 0;
        while (j < r && ++c[j] == m) {
            c[j] = 0;
            ++j;
        }
        if (j == r) {
            break;
        }
    }
    std::sort(codes_.begin(), codes_.end());
    codes_.erase(std::unique(codes_.begin(), codes_.end()), codes_.end());
}

std::uint64_t LatticeImage::encode(std::span<const std::int64_t> vector) const
{
    std::uint64_t code = 0;
    for (auto x : vector) {
        code = code * modulus_ + static_cast<std::uint64_t>(mod(x, static_cast<std::int64_t>(modulus_)));
    }
    return code;
}

bool LatticeImage::contains(std::span<const std::int64_t> vector) const
{
    if (vector.size() != rows_) {
        throw Error(ErrorKind::DimensionMismatch, "vector length mismatch");
    }
    return std::binary_search(codes_.begin(), codes_.end(), encode(vector));
}

bool coset_member(const IntMatrix& basis, std::span<const int> eta_vector, unsigned v)
{
    if (eta_vector.size() != basis.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "eta vector length mismatch");
    }
    const std::int64_t m = std::int64_t{1} << v;
    std::vector<std::int64_t> target(basis.rows());
    for (std::size_t i = 0; i < basis.rows(); ++i) {
        target[i] = eta_vector[i] * (m / 2);
    }
    return LatticeImage(basis, static_cast<std::uint64_t>(m)).contains(target);
}

ExtendedCount depth_by_scan(const IntMatrix& basis, std::span<const int> eta_vector, unsigned max_t)
{
    for (unsigned t = 0; t <= max_t; ++t) {
        if (coset_member(basis, eta_vector, t + 1)) {
            return ExtendedCount(t);
        }
    }
    return ExtendedCount::infinity();
}

std::uint64_t image_order_mod(const IntMatrix& basis, std::uint64_t m)
{
    return LatticeImage(basis, m).size();
}

ExactRational local_sum_partial(const SubgroupPresentation& g, std::uint64_t p, unsigned t, unsigned terms)
{
    // Each |Gamma(p^alpha)| from the gcd formula on m = p^alpha.
    ExactRational sum = 0;
    const ExactInt pt1 = pow_int(p, t) - 1;
    for (unsigned alpha = 1; alpha <= terms; ++alpha) {
        const ExactInt order = g.group_order_mod_kth_powers(pow_int(p, alpha));
        ExactRational term(pt1, pow_int(p, alpha * (t + 1) - 1) * order * to_exact(p - 1));
        term.canonicalize();
        sum += term;
    }
    return sum;
}

} // namespace avgorder::oracle
