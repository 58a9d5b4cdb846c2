#pragma once

#include <cstdint>
#include <vector>

#include "avgorder/exact.hpp"
#include "avgorder/subgroup.hpp"
#include "avgorder/two_adic.hpp"

namespace avgorder {

// [Q(zeta_k, Gamma^{1/k}) : Q] = phi(k) |Gamma(k)| / |tilde-Gamma(k)| for Gamma in Q+.
// Holds a per-instance table of (delta(eta), t_eta); not shared between threads.
class KummerDegree {
public:
    explicit KummerDegree(const SubgroupPresentation& g);

    ExactInt degree(std::uint64_t k) const;
    ExactInt tilde_order(std::uint64_t k) const;

private:
    struct EtaEntry {
        ExactInt discriminant;
        ExtendedCount depth;
    };

    const SubgroupPresentation* group_;
    std::vector<EtaEntry> eta_;
};

ExactInt kummer_degree(const SubgroupPresentation& g, std::uint64_t k);

} // namespace avgorder
