#pragma once

// Brute-force reference computations. They share no code path with the
// closed-form implementations they are used to check.

#include <cstdint>
#include <span>
#include <vector>

#include "avgorder/exact.hpp"
#include "avgorder/int_matrix.hpp"
#include "avgorder/subgroup.hpp"
#include "avgorder/two_adic.hpp"

namespace avgorder::oracle {

// gcd of |det| over all size x size minors.
ExactInt gcd_of_minors(const IntMatrix& a, std::size_t size);

// The set { A c mod m : c in (Z/m)^r }, enumerated exhaustively.
class LatticeImage {
public:
    LatticeImage(const IntMatrix& basis, std::uint64_t modulus);

    bool contains(std::span<const std::int64_t> vector) const;
    std::uint64_t size() const noexcept { return codes_.size(); }

private:
    std::uint64_t encode(std::span<const std::int64_t> vector) const;

    std::uint64_t modulus_;
    std::size_t rows_;
    std::vector<std::uint64_t> codes_; // sorted
};

// Exhaustive check of A c = 2^{v-1} e (mod 2^v) over c in (Z/2^v)^r.
bool coset_member(const IntMatrix& basis, std::span<const int> eta_vector, unsigned v);

// First t in [0, max_t] with coset_member(e, t + 1), or infinity.
ExtendedCount depth_by_scan(const IntMatrix& basis, std::span<const int> eta_vector, unsigned max_t);

// Size of the image of the column lattice in (Z/m)^s.
std::uint64_t image_order_mod(const IntMatrix& basis, std::uint64_t m);

// Partial sum of the local series over alpha = 1..terms.
ExactRational local_sum_partial(const SubgroupPresentation& g, std::uint64_t p, unsigned t, unsigned terms);

} // namespace avgorder::oracle
