#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "avgorder/exact.hpp"
#include "avgorder/subgroup.hpp"

namespace avgorder {

// A nonnegative integer or +infinity. Used for t_eta and gamma_eta.
class ExtendedCount {
public:
    constexpr ExtendedCount() = default;
    constexpr explicit ExtendedCount(unsigned value) : value_(value) {}
    static constexpr ExtendedCount infinity()
    {
        ExtendedCount c;
        c.infinite_ = true;
        return c;
    }

    constexpr bool is_infinite() const noexcept { return infinite_; }
    constexpr unsigned value() const noexcept { return value_; }

    constexpr bool operator==(const ExtendedCount& o) const noexcept
    {
        return infinite_ == o.infinite_ && (infinite_ || value_ == o.value_);
    }
    // True when this is finite and <= bound.
    constexpr bool at_most(long bound) const noexcept
    {
        return !infinite_ && static_cast<long>(value_) <= bound;
    }

    std::string to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

private:
    unsigned value_ = 0;
    bool infinite_ = false;
};

// A square-free divisor of sigma, encoded by the subset of support primes.
struct EtaDescriptor {
    ExactInt eta;
    std::uint32_t mask = 0;          // bit i set <=> support()[i] | eta
    std::vector<int> valuation_vector;
    ExactInt discriminant;           // delta(eta)
    ExtendedCount depth;             // t_eta
    ExtendedCount cutoff;            // gamma_eta
};

// delta(eta) = eta if eta = 1 mod 4, otherwise 4 eta.
ExactInt field_discriminant(const ExactInt& eta);

// Decides eta^{2^{v-1}} in Gamma(2^v) for the square-free eta with the given
// 0/1 valuation vector over the support.
bool coset_member(const SubgroupPresentation& g, std::span<const int> eta_vector, unsigned v);

ExtendedCount eta_depth(const SubgroupPresentation& g, std::uint32_t mask);
ExtendedCount eta_depth(const SubgroupPresentation& g, const ExactInt& eta);

ExtendedCount eta_cutoff(const SubgroupPresentation& g, std::uint32_t mask);
ExtendedCount eta_cutoff(const SubgroupPresentation& g, const ExactInt& eta);

// Subset mask of support primes dividing eta; NotDivisor / NotSquareFree otherwise.
std::uint32_t eta_mask(const SubgroupPresentation& g, const ExactInt& eta);
ExactInt eta_value(const SubgroupPresentation& g, std::uint32_t mask);

EtaDescriptor describe_eta(const SubgroupPresentation& g, std::uint32_t mask);

// All 2^s square-free divisors of sigma, indexed by mask.
std::vector<EtaDescriptor> all_eta(const SubgroupPresentation& g);

// Masks of the eta forming tilde-Gamma(k).
std::vector<std::uint32_t> tilde_gamma_set(const SubgroupPresentation& g, const ExactInt& k);
ExactInt tilde_gamma_order(const SubgroupPresentation& g, const ExactInt& k);

// eta1 * eta2 / gcd(eta1, eta2)^2 on masks.
constexpr std::uint32_t squarefree_product(std::uint32_t a, std::uint32_t b) noexcept { return a ^ b; }

} // namespace avgorder
