#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "avgorder/exact.hpp"
#include "avgorder/high_precision.hpp"
#include "avgorder/subgroup.hpp"
#include "avgorder/two_adic.hpp"

namespace avgorder {

enum class DensityMethod { Series, Euler, PrimeGenerators };

std::string to_string(DensityMethod m);

struct DensityResult {
    HighPrecisionReal value;
    DensityMethod method = DensityMethod::Euler;
    std::optional<ExactRational> exact_multiplier;
    std::vector<std::pair<std::string, std::string>> truncation;
    HighPrecisionReal error_estimate;
};

struct PrecisionConfig {
    unsigned working_digits = 50;
    unsigned max_digits = 60;
    std::uint32_t direct_prime_bound = 1000;
};

// Sum_{alpha >= start} (p^t - 1) / (p^{alpha(t+1)-1} |Gamma(p^alpha)| (p - 1)), exact.
ExactRational local_tail_sum(const SubgroupPresentation& g, std::uint64_t p, unsigned t, unsigned start);

// P_p, the local sum starting at alpha = 1.
ExactRational local_sum(const SubgroupPresentation& g, std::uint64_t p, unsigned t);

// P_p for a prime not dividing Delta_r: (p^t - 1) p / ((p - 1)(p^{r+t+1} - 1)).
ExactRational generic_local_sum(std::uint64_t p, unsigned rank, unsigned t);

// (1 - P^{-1})^{-1} = P / (P - 1).
ExactRational correction_factor(const ExactRational& local);

ExactRational s_eta(const SubgroupPresentation& g, const EtaDescriptor& eta, unsigned t);

// 1 + sum_{eta | sigma, eta != 1} S_eta prod_{p | 2 eta} P_p / (P_p - 1).
ExactRational correction_sum(const SubgroupPresentation& g, unsigned t);

// q with C_{Gamma,t} = q C_{r,t}.
ExactRational rational_multiplier(const SubgroupPresentation& g, unsigned t);

// C_{r,t} = prod_p (1 - (p^t - 1) p / ((p - 1)(p^{r+t+1} - 1))) with absolute error < 10^{-digits}.
HighPrecisionReal universal_constant(unsigned rank, unsigned t, unsigned digits,
                                     const PrecisionConfig& config = {});

// Exact rational coefficients a_k (k = 0..order) of log(1 - g(x)), where
// g(1/p) is the generic local sum.
std::vector<ExactRational> log_local_factor_series(unsigned rank, unsigned t, unsigned order);

DensityResult density_euler(const SubgroupPresentation& g, unsigned t, unsigned digits,
                            const PrecisionConfig& config = {});

DensityResult density_series(const SubgroupPresentation& g, unsigned t, std::uint64_t limit);

// Heuristic tail bound Delta_r 2^r sum_{k > K} (k/phi(k)) k^{-(r+1)}.
double series_tail_bound(const SubgroupPresentation& g, std::uint64_t limit);

// Closed form for groups generated by distinct primes, t = 1.
ExactRational prime_generator_multiplier(const std::vector<std::uint64_t>& primes);
DensityResult density_prime_generators(const SubgroupPresentation& g, unsigned digits,
                                       const PrecisionConfig& config = {});

// True when the input generators are distinct primes.
bool generated_by_distinct_primes(const SubgroupPresentation& g);

} // namespace avgorder
