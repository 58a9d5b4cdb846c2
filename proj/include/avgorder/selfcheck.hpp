#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "avgorder/subgroup.hpp"

namespace avgorder {

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::string first_failure;
    double seconds = 0.0;
};

struct SelfcheckOptions {
    std::uint64_t seed = 0x5eed2024;
    unsigned random_presentations = 100;
    std::uint64_t series_limit = 100000;
    std::uint64_t order_prime_bound = 2000;
    std::uint64_t degree_limit = 5000;
    // Multiplies the reported Delta_r by 2 before it is compared with the
    // minors, so that the SNF suite must fail.
    bool inject_delta_fault = false;
};

// Random subgroup of Q_{>0}^*: up to max_generators generators with exponents in
// [-max_exponent, max_exponent] over at most max_support of the first primes.
SubgroupPresentation random_presentation(std::mt19937_64& rng, unsigned max_support,
                                         unsigned max_generators, int max_exponent);

SuiteResult check_smith_against_minors(const SelfcheckOptions& options);
SuiteResult check_coset_membership(const SelfcheckOptions& options);
SuiteResult check_depth_scan(const SelfcheckOptions& options);
SuiteResult check_image_orders(const SelfcheckOptions& options);
SuiteResult check_group_orders(const SelfcheckOptions& options);
SuiteResult check_method_agreement(const SelfcheckOptions& options);
SuiteResult check_tilde_closure(const SelfcheckOptions& options);
SuiteResult check_degrees(const SelfcheckOptions& options);

std::vector<SuiteResult> run_selfcheck(const SelfcheckOptions& options);

bool all_passed(const std::vector<SuiteResult>& results);

} // namespace avgorder
