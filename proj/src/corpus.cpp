#include "avgorder/corpus.hpp"

#include "avgorder/factor.hpp"

namespace avgorder {

std::string_view family_label(PrimeFamily family)
{
    switch (family) {
    case PrimeFamily::FirstPrimes: return "Gamma_r";
    case PrimeFamily::FirstOddPrimes: return "Gamma'_r";
    case PrimeFamily::OneModFour: return "Gamma''_r";
    }
    return "?";
}

std::vector<PrimeFamily> all_families()
{
    return {PrimeFamily::FirstPrimes, PrimeFamily::FirstOddPrimes, PrimeFamily::OneModFour};
}

std::vector<std::uint64_t> family_primes(PrimeFamily family, unsigned rank)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 2; out.size() < rank; ++n) {
        if (!is_prime_u64(n)) {
            continue;
        }
        const bool keep = family == PrimeFamily::FirstPrimes ||
                          (family == PrimeFamily::FirstOddPrimes && n != 2) ||
                          (family == PrimeFamily::OneModFour && n % 4 == 1);
        if (keep) {
            out.push_back(n);
        }
    }
    return out;
}

std::string join_generators(const std::vector<std::uint64_t>& primes)
{
    std::string out;
    for (auto p : primes) {
        if (!out.empty()) {
            out += ',';
        }
        out += std::to_string(p);
    }
    return out;
}

std::vector<std::string> corpus_generator_lists()
{
    std::vector<std::string> out;
    for (auto family : all_families()) {
        for (unsigned r = 1; r <= 7; ++r) {
            out.push_back(join_generators(family_primes(family, r)));
        }
    }
    for (const char* extra : {"4", "4,27", "3/2,5", "12,18", "2,3,6", "8,9,5", "36,10", "2/3,6/5", "16,3", "7/4"}) {
        out.emplace_back(extra);
    }
    return out;
}

} // namespace avgorder
