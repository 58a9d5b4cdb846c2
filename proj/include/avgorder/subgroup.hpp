#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "avgorder/exact.hpp"
#include "avgorder/int_matrix.hpp"

namespace avgorder {

// A positive rational stored as its prime factorization. The empty map is 1.
class FactoredPositiveRational {
public:
    FactoredPositiveRational() = default;
    explicit FactoredPositiveRational(std::map<std::uint64_t, long> exponents);

    const std::map<std::uint64_t, long>& exponents() const noexcept { return exponents_; }
    long exponent(std::uint64_t p) const;
    bool is_one() const noexcept { return exponents_.empty(); }

    ExactRational value() const;
    std::string to_string() const;

    bool operator==(const FactoredPositiveRational&) const = default;

private:
    std::map<std::uint64_t, long> exponents_;
};

// Accepts "a" or "a/b" with decimal a, b.
FactoredPositiveRational parse_generator(std::string_view text);

// Comma-separated generator tokens, whitespace around tokens ignored.
std::vector<FactoredPositiveRational> parse_generator_list(std::string_view text);

inline constexpr std::size_t kMaxSupport = 24;

// Immutable description of a finitely generated subgroup of Q+: the
// valuation lattice, a basis of it, its Smith data and the exponents Delta_i.
class SubgroupPresentation {
public:
    static SubgroupPresentation build(std::vector<FactoredPositiveRational> generators);
    static SubgroupPresentation parse(std::string_view generator_list);

    const std::vector<FactoredPositiveRational>& generators() const noexcept { return generators_; }
    const std::vector<std::uint64_t>& support() const noexcept { return support_; }
    const ExactInt& sigma() const noexcept { return sigma_; }
    std::size_t support_size() const noexcept { return support_.size(); }
    unsigned rank() const noexcept { return static_cast<unsigned>(basis_.cols()); }

    // s x r; column j holds the valuations of the j-th basis element.
    const IntMatrix& basis_matrix() const noexcept { return basis_; }
    const SmithDecomposition& smith() const noexcept { return smith_; }
    const std::vector<ExactInt>& elementary_divisors() const noexcept { return smith_.divisors; }
    // Delta_0 .. Delta_r.
    const std::vector<ExactInt>& deltas() const noexcept { return deltas_; }

    // Basis elements as rationals, in column order of basis_matrix().
    std::vector<FactoredPositiveRational> basis_generators() const;

    // |Gamma(m)| = m^r / gcd(m^r, m^{r-1} Delta_1, ..., Delta_r).
    ExactInt group_order_mod_kth_powers(const ExactInt& m) const;

    // |Gamma(p^alpha)| as its exponent of p.
    unsigned local_order_exponent(std::uint64_t p, unsigned alpha) const;
    ExactInt local_order(std::uint64_t p, unsigned alpha) const;

    // k_p = max_i v_p(d_i); beyond it |Gamma(p^alpha)| = p^{r alpha - v_p(Delta_r)}.
    unsigned stabilization_exponent(std::uint64_t p) const;

    // v_p(Delta_i), 0 <= i <= r.
    unsigned delta_valuation(std::size_t i, std::uint64_t p) const;

    std::string describe() const;

private:
    SubgroupPresentation() = default;

    std::vector<FactoredPositiveRational> generators_;
    std::vector<std::uint64_t> support_;
    ExactInt sigma_ = 1;
    IntMatrix basis_;
    SmithDecomposition smith_;
    std::vector<ExactInt> deltas_;
};

} // namespace avgorder
