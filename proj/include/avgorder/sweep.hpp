#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "avgorder/exact.hpp"
#include "avgorder/factor.hpp"
#include "avgorder/subgroup.hpp"

namespace avgorder {

inline constexpr std::uint64_t kDefaultSegmentSize = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kDefaultSweepCap = 10'000'000'000ULL;

struct CheckpointRow {
    std::uint64_t limit = 0;
    std::uint64_t prime_count = 0;
    ExactInt sum_orders_t = 0;
    ExactInt sum_p_t = 0;

    bool operator==(const CheckpointRow&) const = default;
};

// Mergeable totals of sum |Gamma_p|^t, sum p^t and pi(x) over a prime range.
class SweepLedger {
public:
    std::uint64_t limit_reached = 0;
    std::uint64_t prime_count = 0;
    ExactInt sum_orders_t = 0;
    ExactInt sum_p_t = 0;
    std::vector<CheckpointRow> checkpoints;

    // Totals add; checkpoint rows are interleaved by limit.
    void merge(const SweepLedger& other);

    CheckpointRow totals() const { return {limit_reached, prime_count, sum_orders_t, sum_p_t}; }

    bool operator==(const SweepLedger&) const = default;
};

// Primes in [lo, hi]; hi - lo must not exceed max_length.
std::vector<std::uint64_t> primes_in_segment(std::uint64_t lo, std::uint64_t hi,
                                             std::uint64_t max_length = kDefaultSegmentSize);

// Complete factorization of p - 1 by trial division with the given ascending
// base primes, which must cover sqrt(p - 1).
std::vector<PrimePower> factor_pminus1(std::uint64_t p, std::span<const std::uint32_t> base_primes);
std::vector<PrimePower> factor_pminus1(std::uint64_t p);

// Multiplicative order of g mod p, given the factorization of p - 1.
std::uint64_t element_order(std::uint64_t g, std::uint64_t p, std::span<const PrimePower> pminus1);

// Reduces basis generators modulo primes outside the support.
class GeneratorResidues {
public:
    explicit GeneratorResidues(const SubgroupPresentation& g);

    bool in_support(std::uint64_t p) const;
    // Residues of the basis generators mod p (numerator times inverse denominator).
    void residues(std::uint64_t p, std::vector<std::uint64_t>& out) const;
    // |Gamma_p| (1 for support primes).
    std::uint64_t group_order(std::uint64_t p, std::span<const PrimePower> pminus1) const;

private:
    struct Term {
        std::size_t support_index;
        unsigned long exponent;
    };
    std::vector<std::uint64_t> support_;
    std::vector<std::vector<Term>> numerators_;
    std::vector<std::vector<Term>> denominators_;
};

std::uint64_t group_order_mod_p(const SubgroupPresentation& g, std::uint64_t p);

// Closure of the input generator residues under multiplication; p <= 10^5.
std::uint64_t brute_force_group_order(const SubgroupPresentation& g, std::uint64_t p);

struct SweepOptions {
    unsigned t = 1;
    std::uint64_t limit = 0;
    // Checkpoint limits; the final limit is always appended.
    std::vector<std::uint64_t> checkpoints;
    unsigned workers = 1;
    std::uint64_t segment_size = kDefaultSegmentSize;
    std::uint64_t cap = kDefaultSweepCap;
    // Called in ascending order on the calling thread as each checkpoint completes,
    // once per group (group index, row).
    std::function<void(std::size_t, const CheckpointRow&)> on_checkpoint;
};

// Powers of ten below limit, then limit.
std::vector<std::uint64_t> power_of_ten_schedule(std::uint64_t limit);

SweepLedger sweep(const SubgroupPresentation& g, const SweepOptions& options);

// Several groups in one pass; primes and p - 1 factorizations are shared.
std::vector<SweepLedger> sweep_many(std::span<const SubgroupPresentation> groups, const SweepOptions& options);

} // namespace avgorder
