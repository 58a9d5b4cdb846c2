#include "avgorder/two_adic.hpp"

#include <algorithm>
#include <bit>

#include "avgorder/errors.hpp"

namespace avgorder {

namespace {

// Parities of f = U e_eta: bit i set when f_i is odd.
std::vector<bool> transformed_parity(const SubgroupPresentation& g, std::uint32_t mask)
{
    const IntMatrix& u = g.smith().left;
    std::vector<bool> odd(u.rows(), false);
    for (std::size_t i = 0; i < u.rows(); ++i) {
        bool parity = false;
        for (std::size_t j = 0; j < u.cols(); ++j) {
            if ((mask >> j) & 1u) {
                parity ^= mpz_odd_p(u(i, j).get_mpz_t()) != 0;
            }
        }
        odd[i] = parity;
    }
    return odd;
}

std::uint32_t mask_from_vector(const SubgroupPresentation& g, std::span<const int> eta_vector)
{
    if (eta_vector.size() != g.support_size()) {
        throw Error(ErrorKind::DimensionMismatch, "eta valuation vector length " +
                                                      std::to_string(eta_vector.size()) + " != support size " +
                                                      std::to_string(g.support_size()));
    }
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < eta_vector.size(); ++i) {
        if (eta_vector[i] != 0 && eta_vector[i] != 1) {
            throw Error(ErrorKind::InvalidArgument, "eta valuation vector must be 0/1");
        }
        if (eta_vector[i] == 1) {
            mask |= 1u << i;
        }
    }
    return mask;
}

} // namespace

ExactInt field_discriminant(const ExactInt& eta)
{
    if (eta < 1) {
        throw Error(ErrorKind::InvalidArgument, "eta must be positive");
    }
    ExactInt rest = eta;
    for (unsigned long p = 2; p <= 1'000'000 && ExactInt(p) * p <= rest; ++p) {
        if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            continue;
        }
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            throw Error(ErrorKind::NotSquareFree, eta.get_str() + " is not square-free");
        }
    }
    if (rest != 1 && mpz_perfect_square_p(rest.get_mpz_t())) {
        throw Error(ErrorKind::NotSquareFree, eta.get_str() + " is not square-free");
    }
    if (mpz_fdiv_ui(eta.get_mpz_t(), 4) == 1) {
        return eta;
    }
    return 4 * eta;
}

bool coset_member(const SubgroupPresentation& g, std::span<const int> eta_vector, unsigned v)
{
    if (v < 1) {
        throw Error(ErrorKind::InvalidArgument, "v must be >= 1");
    }
    const std::uint32_t mask = mask_from_vector(g, eta_vector);
    const std::vector<bool> odd = transformed_parity(g, mask);
    const auto& d = g.elementary_divisors();
    for (std::size_t i = 0; i < odd.size(); ++i) {
        if (!odd[i]) {
            continue;
        }
        if (i >= d.size()) {
            return false;
        }
        if (valuation(d[i], 2) > v - 1) {
            return false;
        }
    }
    return true;
}

ExtendedCount eta_depth(const SubgroupPresentation& g, std::uint32_t mask)
{
    const std::vector<bool> odd = transformed_parity(g, mask);
    const auto& d = g.elementary_divisors();
    unsigned depth = 0;
    for (std::size_t i = 0; i < odd.size(); ++i) {
        if (!odd[i]) {
            continue;
        }
        if (i >= d.size()) {
            return ExtendedCount::infinity();
        }
        depth = std::max(depth, valuation(d[i], 2));
    }
    return ExtendedCount(depth);
}

ExtendedCount eta_depth(const SubgroupPresentation& g, const ExactInt& eta)
{
    return eta_depth(g, eta_mask(g, eta));
}

ExtendedCount eta_cutoff(const SubgroupPresentation& g, std::uint32_t mask)
{
    const ExtendedCount depth = eta_depth(g, mask);
    if (depth.is_infinite()) {
        return depth;
    }
    const unsigned v2 = valuation(field_discriminant(eta_value(g, mask)), 2);
    return ExtendedCount(std::max(1 + depth.value(), v2));
}

ExtendedCount eta_cutoff(const SubgroupPresentation& g, const ExactInt& eta)
{
    return eta_cutoff(g, eta_mask(g, eta));
}

std::uint32_t eta_mask(const SubgroupPresentation& g, const ExactInt& eta)
{
    if (eta < 1) {
        throw Error(ErrorKind::InvalidArgument, "eta must be positive");
    }
    if (!mpz_divisible_p(g.sigma().get_mpz_t(), eta.get_mpz_t())) {
        throw Error(ErrorKind::NotDivisor, eta.get_str() + " does not divide sigma = " + g.sigma().get_str());
    }
    std::uint32_t mask = 0;
    const auto& support = g.support();
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (mpz_divisible_ui_p(eta.get_mpz_t(), support[i])) {
            mask |= 1u << i;
        }
    }
    return mask;
}

ExactInt eta_value(const SubgroupPresentation& g, std::uint32_t mask)
{
    ExactInt eta = 1;
    const auto& support = g.support();
    for (std::size_t i = 0; i < support.size(); ++i) {
        if ((mask >> i) & 1u) {
            eta *= to_exact(support[i]);
        }
    }
    return eta;
}

EtaDescriptor describe_eta(const SubgroupPresentation& g, std::uint32_t mask)
{
    EtaDescriptor e;
    e.mask = mask;
    e.eta = eta_value(g, mask);
    e.valuation_vector.resize(g.support_size());
    for (std::size_t i = 0; i < g.support_size(); ++i) {
        e.valuation_vector[i] = static_cast<int>((mask >> i) & 1u);
    }
    e.discriminant = field_discriminant(e.eta);
    e.depth = eta_depth(g, mask);
    e.cutoff = e.depth.is_infinite()
                   ? ExtendedCount::infinity()
                   : ExtendedCount(std::max(1 + e.depth.value(), valuation(e.discriminant, 2)));
    return e;
}

std::vector<EtaDescriptor> all_eta(const SubgroupPresentation& g)
{
    const std::uint32_t count = 1u << g.support_size();
    std::vector<EtaDescriptor> out;
    out.reserve(count);
    for (std::uint32_t mask = 0; mask < count; ++mask) {
        out.push_back(describe_eta(g, mask));
    }
    return out;
}

std::vector<std::uint32_t> tilde_gamma_set(const SubgroupPresentation& g, const ExactInt& k)
{
    if (k < 1) {
        throw Error(ErrorKind::InvalidArgument, "k must be positive");
    }
    const unsigned v2 = valuation(k, 2);
    if (v2 == 0) {
        return {0};
    }
    std::vector<std::uint32_t> out;
    const std::uint32_t count = 1u << g.support_size();
    for (std::uint32_t mask = 0; mask < count; ++mask) {
        const ExactInt eta = eta_value(g, mask);
        const ExactInt disc = mpz_fdiv_ui(eta.get_mpz_t(), 4) == 1 ? eta : ExactInt(4 * eta);
        if (!mpz_divisible_p(k.get_mpz_t(), disc.get_mpz_t())) {
            continue;
        }
        if (eta_depth(g, mask).at_most(static_cast<long>(v2) - 1)) {
            out.push_back(mask);
        }
    }
    return out;
}

ExactInt tilde_gamma_order(const SubgroupPresentation& g, const ExactInt& k)
{
    return ExactInt(static_cast<unsigned long>(tilde_gamma_set(g, k).size()));
}

} // namespace avgorder
