#include <doctest.h>

#include <numeric>
#include <random>

#include "avgorder/selfcheck.hpp"
#include "avgorder/subgroup.hpp"
#include "avgorder/two_adic.hpp"

using namespace avgorder;

namespace {

void require_pass(const SuiteResult& r)
{
    INFO(r.name << ": " << r.failures << " of " << r.checks << " failed; first: " << r.first_failure);
    CHECK(r.passed);
    CHECK(r.checks > 0);
}

} // namespace

TEST_SUITE("properties") {

TEST_CASE("smith data equals minor gcds") { require_pass(check_smith_against_minors({})); }
TEST_CASE("coset membership equals exhaustive enumeration") { require_pass(check_coset_membership({})); }
TEST_CASE("depth equals the first true scan index") { require_pass(check_depth_scan({})); }
TEST_CASE("|Gamma(m)| equals the lattice image order") { require_pass(check_image_orders({})); }
TEST_CASE("group order mod p equals subgroup enumeration") { require_pass(check_group_orders({})); }
TEST_CASE("density methods agree") { require_pass(check_method_agreement({})); }
TEST_CASE("tilde gamma sets are groups") { require_pass(check_tilde_closure({})); }
TEST_CASE("Kummer degrees are integral and bounded") { require_pass(check_degrees({})); }

TEST_CASE("an injected Delta fault is detected")
{
    SelfcheckOptions opts;
    opts.inject_delta_fault = true;
    const auto r = check_smith_against_minors(opts);
    CHECK_FALSE(r.passed);
    CHECK(r.failures > 0);
    CHECK_FALSE(all_passed(run_selfcheck(opts)));
}

TEST_CASE("another seed also passes")
{
    SelfcheckOptions opts;
    opts.seed = 12345;
    require_pass(check_smith_against_minors(opts));
    require_pass(check_coset_membership(opts));
    require_pass(check_depth_scan(opts));
}

TEST_CASE("|Gamma(mn)| = |Gamma(m)| |Gamma(n)| for coprime m, n")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = random_presentation(rng, 4, 3, 4);
        for (unsigned m = 1; m <= 100; ++m) {
            for (unsigned n = m; n <= 100; n += 7) {
                if (std::gcd(m, n) != 1) {
                    continue;
                }
                CHECK(g.group_order_mod_kth_powers(ExactInt(m * n)) ==
                      g.group_order_mod_kth_powers(ExactInt(m)) * g.group_order_mod_kth_powers(ExactInt(n)));
            }
        }
    }
}

TEST_CASE("local orders grow by at most p^r per step")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = random_presentation(rng, 4, 3, 4);
        for (std::uint64_t p : {2, 3, 5, 7}) {
            for (unsigned alpha = 0; alpha < 12; ++alpha) {
                const ExactInt a = g.local_order(p, alpha);
                const ExactInt b = g.local_order(p, alpha + 1);
                CHECK(b % a == 0);
                CHECK(b / a <= pow_int(p, g.rank()));
            }
            // Beyond k_p the order is p^{r alpha - v_p(Delta_r)}.
            const unsigned kp = g.stabilization_exponent(p);
            const unsigned alpha = kp + 3;
            CHECK(g.local_order_exponent(p, alpha) == g.rank() * alpha - g.delta_valuation(g.rank(), p));
        }
    }
}

TEST_CASE("membership is monotone in v")
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = random_presentation(rng, 4, 3, 6);
        for (const auto& eta : all_eta(g)) {
            bool seen = false;
            for (unsigned v = 1; v <= 12; ++v) {
                const bool member = coset_member(g, eta.valuation_vector, v);
                CHECK((!seen || member));
                seen = seen || member;
            }
        }
    }
}

}
