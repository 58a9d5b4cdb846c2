#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace avgorder {

// The three families of prime-generated groups compared in the density tables.
enum class PrimeFamily {
    FirstPrimes,     // 2, 3, 5, ...
    FirstOddPrimes,  // 3, 5, 7, ...
    OneModFour,      // 5, 13, 17, ...
};

std::string_view family_label(PrimeFamily family);
std::vector<PrimeFamily> all_families();

std::vector<std::uint64_t> family_primes(PrimeFamily family, unsigned rank);

std::string join_generators(const std::vector<std::uint64_t>& primes);

// Generator lists used by the self-check suites: every family for ranks 1..7
// plus groups with nontrivial Delta_r, rational and dependent generators.
std::vector<std::string> corpus_generator_lists();

} // namespace avgorder
