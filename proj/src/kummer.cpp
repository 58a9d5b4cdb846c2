#include "avgorder/kummer.hpp"

#include "avgorder/arithmetic.hpp"
#include "avgorder/errors.hpp"

namespace avgorder {

KummerDegree::KummerDegree(const SubgroupPresentation& g) : group_(&g)
{
    const std::uint32_t count = 1u << g.support_size();
    eta_.reserve(count);
    for (std::uint32_t mask = 0; mask < count; ++mask) {
        eta_.push_back({field_discriminant(eta_value(g, mask)), eta_depth(g, mask)});
    }
}

ExactInt KummerDegree::tilde_order(std::uint64_t k) const
{
    const unsigned v2 = valuation(k, 2);
    if (v2 == 0) {
        return 1;
    }
    const ExactInt kk = to_exact(k);
    unsigned long count = 0;
    for (const auto& e : eta_) {
        if (e.depth.at_most(static_cast<long>(v2) - 1) && e.discriminant <= kk &&
            mpz_divisible_p(kk.get_mpz_t(), e.discriminant.get_mpz_t())) {
            ++count;
        }
    }
    return ExactInt(count);
}

ExactInt KummerDegree::degree(std::uint64_t k) const
{
    if (k == 0) {
        throw Error(ErrorKind::InvalidArgument, "k must be positive");
    }
    ExactInt numerator = to_exact(euler_phi(k)) * group_->group_order_mod_kth_powers(to_exact(k));
    const ExactInt tilde = tilde_order(k);
    if (!mpz_divisible_p(numerator.get_mpz_t(), tilde.get_mpz_t())) {
        throw Error(ErrorKind::NonIntegralDegree, "|tilde Gamma(" + std::to_string(k) +
                                                      ")| does not divide phi(k)|Gamma(k)|");
    }
    mpz_divexact(numerator.get_mpz_t(), numerator.get_mpz_t(), tilde.get_mpz_t());
    return numerator;
}

ExactInt kummer_degree(const SubgroupPresentation& g, std::uint64_t k)
{
    return KummerDegree(g).degree(k);
}

} // namespace avgorder
