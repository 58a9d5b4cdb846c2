#include "avgorder/density.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "avgorder/arithmetic.hpp"
#include "avgorder/errors.hpp"
#include "avgorder/factor.hpp"
#include "avgorder/kummer.hpp"

namespace avgorder {

namespace {

unsigned working_digits_for(unsigned digits, const PrecisionConfig& config)
{
    if (digits > config.max_digits) {
        throw Error(ErrorKind::PrecisionUnreachable, "requested " + std::to_string(digits) +
                                                         " digits, at most " + std::to_string(config.max_digits) +
                                                         " supported");
    }
    return std::max(config.working_digits, digits + 15);
}

using Series = std::vector<ExactRational>;

Series truncated_product(const Series& a, const Series& b, std::size_t order)
{
    Series out(order + 1, ExactRational(0));
    for (std::size_t i = 0; i < a.size() && i <= order; ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) {
            if (b[j] != 0) {
                out[i + j] += a[i] * b[j];
            }
        }
    }
    return out;
}

void require_positive_t(unsigned t)
{
    if (t == 0) {
        throw Error(ErrorKind::InvalidArgument, "t must be a positive integer");
    }
}

} // namespace

std::string to_string(DensityMethod m)
{
    switch (m) {
    case DensityMethod::Series: return "series";
    case DensityMethod::Euler: return "euler";
    case DensityMethod::PrimeGenerators: return "cor3";
    }
    return "unknown";
}

ExactRational local_tail_sum(const SubgroupPresentation& g, std::uint64_t p, unsigned t, unsigned start)
{
    require_positive_t(t);
    if (start == 0) {
        throw Error(ErrorKind::InvalidArgument, "local sums start at alpha >= 1");
    }
    const unsigned r = g.rank();
    const unsigned n = r + t + 1;
    const unsigned stable_from = std::max(1u, g.stabilization_exponent(p));
    const ExactRational scale(pow_int(p, t) - 1, to_exact(p - 1));

    ExactRational sum = 0;
    for (unsigned alpha = start; alpha < stable_from; ++alpha) {
        const long exponent = static_cast<long>(alpha) * (t + 1) - 1 + g.local_order_exponent(p, alpha);
        sum += scale * pow_rational(p, -exponent);
    }
    const unsigned a = std::max(start, stable_from);
    const long v = g.delta_valuation(r, p);
    ExactRational tail = scale * pow_rational(p, 1 + v + (1 - static_cast<long>(a)) * static_cast<long>(n));
    tail /= ExactRational(pow_int(p, n) - 1);
    sum += tail;
    sum.canonicalize();
    return sum;
}

ExactRational local_sum(const SubgroupPresentation& g, std::uint64_t p, unsigned t)
{
    ExactRational value = local_tail_sum(g, p, t, 1);
    if (value <= 0 || value >= 1) {
        throw Error(ErrorKind::DomainError, "local sum at p = " + std::to_string(p) + " is " + value.get_str() +
                                                ", outside (0, 1)");
    }
    return value;
}

ExactRational generic_local_sum(std::uint64_t p, unsigned rank, unsigned t)
{
    require_positive_t(t);
    ExactRational out((pow_int(p, t) - 1) * to_exact(p),
                      to_exact(p - 1) * (pow_int(p, rank + t + 1) - 1));
    out.canonicalize();
    return out;
}

ExactRational correction_factor(const ExactRational& local)
{
    ExactRational out = local / (local - 1);
    out.canonicalize();
    return out;
}

ExactRational s_eta(const SubgroupPresentation& g, const EtaDescriptor& eta, unsigned t)
{
    if (eta.cutoff.is_infinite()) {
        return 0;
    }
    ExactRational out = local_tail_sum(g, 2, t, eta.cutoff.value()) / local_tail_sum(g, 2, t, 1);
    out.canonicalize();
    return out;
}

ExactRational correction_sum(const SubgroupPresentation& g, unsigned t)
{
    require_positive_t(t);
    if (g.support_size() > kMaxSupport) {
        throw Error(ErrorKind::SupportTooLarge, "support too large for the eta enumeration");
    }
    const auto& support = g.support();
    std::vector<ExactRational> factors(support.size());
    for (std::size_t i = 0; i < support.size(); ++i) {
        factors[i] = correction_factor(local_sum(g, support[i], t));
    }
    const ExactRational factor_two = correction_factor(local_sum(g, 2, t));
    const bool two_in_support = !support.empty() && support.front() == 2;

    ExactRational sum = 1;
    const std::uint32_t count = 1u << support.size();
    for (std::uint32_t mask = 1; mask < count; ++mask) {
        const EtaDescriptor eta = describe_eta(g, mask);
        if (eta.cutoff.is_infinite()) {
            continue;
        }
        ExactRational term = s_eta(g, eta, t);
        if (term == 0) {
            continue;
        }
        // primes dividing 2 eta
        if (!(two_in_support && (mask & 1u))) {
            term *= factor_two;
        }
        for (std::size_t i = 0; i < support.size(); ++i) {
            if ((mask >> i) & 1u) {
                term *= factors[i];
            }
        }
        sum += term;
    }
    sum.canonicalize();
    return sum;
}

ExactRational rational_multiplier(const SubgroupPresentation& g, unsigned t)
{
    ExactRational q = correction_sum(g, t);
    const ExactInt& delta_r = g.deltas().back();
    if (delta_r != 1) {
        for (const auto& [p, e] : factor_positive(delta_r)) {
            const std::uint64_t prime = to_u64(p);
            q *= (1 - local_sum(g, prime, t)) / (1 - generic_local_sum(prime, g.rank(), t));
        }
    }
    q.canonicalize();
    return q;
}

std::vector<ExactRational> log_local_factor_series(unsigned rank, unsigned t, unsigned order)
{
    require_positive_t(t);
    const unsigned period = rank + t + 1;
    // g(x) = x^{r+1} (1 + x + ... + x^{t-1}) / (1 - x^{r+t+1})
    Series g(order + 1, ExactRational(0));
    for (unsigned j = 0; rank + 1 + j * period <= order; ++j) {
        for (unsigned i = 0; i < t && rank + 1 + i + j * period <= order; ++i) {
            g[rank + 1 + i + j * period] += 1;
        }
    }
    // log(1 - g) = -sum_m g^m / m
    Series out(order + 1, ExactRational(0));
    Series power = g;
    for (unsigned m = 1; m * (rank + 1) <= order; ++m) {
        for (unsigned k = 0; k <= order; ++k) {
            if (power[k] != 0) {
                out[k] -= power[k] / m;
            }
        }
        power = truncated_product(power, g, order);
    }
    for (auto& c : out) {
        c.canonicalize();
    }
    return out;
}

HighPrecisionReal universal_constant(unsigned rank, unsigned t, unsigned digits, const PrecisionConfig& config)
{
    require_positive_t(t);
    if (rank == 0) {
        throw Error(ErrorKind::InvalidArgument, "rank must be >= 1");
    }
    const unsigned wp = working_digits_for(digits, config);
    PrecisionScope scope(wp + 10);

    const std::uint32_t bound = config.direct_prime_bound;
    const std::vector<std::uint32_t> primes = primes_up_to(bound);

    // Pick the series order: first omitted term |a_N| P^{1-N} / (N-1) below 10^{-digits-5}.
    const double log10_bound = std::log10(static_cast<double>(bound));
    unsigned order = rank + 2 + static_cast<unsigned>((digits + 10) / log10_bound);
    std::vector<ExactRational> coeffs;
    while (true) {
        coeffs = log_local_factor_series(rank, t, order + 1);
        const ExactRational& next = coeffs[order + 1];
        const double mag = next == 0 ? -1e9 : std::log10(std::fabs(next.get_d()));
        const double omitted = mag + (1.0 - (order + 1)) * log10_bound - std::log10(static_cast<double>(order));
        if (omitted < -static_cast<double>(digits) - 5.0 || order > 400) {
            break;
        }
        order += 4;
    }

    // Direct Euler factors for p <= bound, in ascending p.
    HighPrecisionReal log_c = 0;
    for (std::uint32_t p : primes) {
        log_c += log(1 - to_real(generic_local_sum(p, rank, t)));
    }
    // Tail via the prime zeta function, k ascending.
    for (unsigned k = rank + 1; k <= order; ++k) {
        if (coeffs[k] == 0) {
            continue;
        }
        HighPrecisionReal head = 0;
        for (std::uint32_t p : primes) {
            head += pow(HighPrecisionReal(p), -static_cast<int>(k));
        }
        log_c += to_real(coeffs[k]) * (prime_zeta(k) - head);
    }
    return exp(log_c);
}

DensityResult density_euler(const SubgroupPresentation& g, unsigned t, unsigned digits, const PrecisionConfig& config)
{
    const unsigned wp = working_digits_for(digits, config);
    PrecisionScope scope(wp + 10);
    DensityResult result;
    result.method = DensityMethod::Euler;
    result.exact_multiplier = rational_multiplier(g, t);
    HighPrecisionReal c = universal_constant(g.rank(), t, std::min(digits + 2, config.max_digits), config);
    result.value = to_real(*result.exact_multiplier) * c;
    result.error_estimate = power_of_ten(-static_cast<int>(digits));
    result.truncation = {{"direct_prime_bound", std::to_string(config.direct_prime_bound)},
                         {"working_digits", std::to_string(wp)}};
    if (result.value <= 0) {
        throw Error(ErrorKind::DomainError, "non-positive density");
    }
    return result;
}

double series_tail_bound(const SubgroupPresentation& g, std::uint64_t limit)
{
    // sum_{k > K} f(k) <= int_K^inf f, f(x) = 6 log(log x + 2) x^{-(r+1)} decreasing for x >= 3.
    const double r = g.rank();
    const double lo = std::log(static_cast<double>(std::max<std::uint64_t>(limit, 3)));
    const double hi = lo + 60.0 / r;
    const int intervals = 4000;
    const double h = (hi - lo) / intervals;
    auto f = [&](double u) { return 6.0 * std::log(u + 2.0) * std::exp(-r * u); };
    double simpson = f(lo) + f(hi);
    for (int i = 1; i < intervals; ++i) {
        simpson += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
    }
    simpson *= h / 3.0;
    const double delta_r = g.deltas().back().get_d();
    return delta_r * std::pow(2.0, r) * simpson;
}

DensityResult density_series(const SubgroupPresentation& g, unsigned t, std::uint64_t limit)
{
    require_positive_t(t);
    if (limit < 1) {
        throw Error(ErrorKind::InvalidArgument, "series limit must be >= 1");
    }
    if (limit > 100'000'000) {
        throw Error(ErrorKind::InvalidArgument, "series limit above 10^8");
    }
    const ArithmeticTable table(static_cast<std::uint32_t>(limit));
    const KummerDegree kummer(g);

    long double sum = 0.0L, compensation = 0.0L, magnitude = 0.0L;
    for (std::uint32_t k = 1; k <= limit; ++k) {
        long double term = 1.0L;
        for (std::uint32_t l : table.prime_divisors(k)) {
            term *= 1.0L - std::pow(static_cast<long double>(l), -static_cast<long double>(t));
        }
        term *= std::pow(static_cast<long double>(table.rad(k)) / k, static_cast<long double>(t));
        if (table.omega(k) % 2 == 1) {
            term = -term;
        }
        ExactInt deg = g.group_order_mod_kth_powers(ExactInt(k)) * table.phi(k);
        const ExactInt tilde = kummer.tilde_order(k);
        if (!mpz_divisible_p(deg.get_mpz_t(), tilde.get_mpz_t())) {
            throw Error(ErrorKind::NonIntegralDegree, "degree not integral at k = " + std::to_string(k));
        }
        mpz_divexact(deg.get_mpz_t(), deg.get_mpz_t(), tilde.get_mpz_t());
        term /= static_cast<long double>(deg.get_d());
        magnitude += std::fabs(term);

        // Kahan-Babuska summation
        const long double y = sum + term;
        if (std::fabs(sum) >= std::fabs(term)) {
            compensation += (sum - y) + term;
        } else {
            compensation += (term - y) + sum;
        }
        sum = y;
    }

    PrecisionScope scope(30);
    DensityResult result;
    result.method = DensityMethod::Series;
    result.value = HighPrecisionReal(sum + compensation);
    // Tail bound plus rounding: each term carries a double-precision degree.
    const double rounding = std::ldexp(static_cast<double>(magnitude), -50);
    result.error_estimate = HighPrecisionReal(series_tail_bound(g, limit) + rounding);
    result.truncation = {{"series_limit", std::to_string(limit)}};
    return result;
}

bool generated_by_distinct_primes(const SubgroupPresentation& g)
{
    std::set<std::uint64_t> seen;
    for (const auto& gen : g.generators()) {
        const auto& e = gen.exponents();
        if (e.size() != 1 || e.begin()->second != 1 || !seen.insert(e.begin()->first).second) {
            return false;
        }
    }
    return true;
}

ExactRational prime_generator_multiplier(const std::vector<std::uint64_t>& primes)
{
    const unsigned r = static_cast<unsigned>(primes.size());
    if (r == 0 || r > kMaxSupport) {
        throw Error(ErrorKind::InvalidArgument, "prime generator count out of range");
    }
    // l / (l + 1 - l^{r+2})
    auto local = [r](std::uint64_t l) {
        ExactRational f(to_exact(l), to_exact(l) + 1 - pow_int(l, r + 2));
        f.canonicalize();
        return f;
    };
    const ExactRational two_factor = local(2);
    ExactRational sum = 1;
    for (std::uint32_t mask = 1; mask < (1u << r); ++mask) {
        ExactInt eta = 1;
        ExactRational term = 1;
        bool even = false;
        for (unsigned i = 0; i < r; ++i) {
            if ((mask >> i) & 1u) {
                eta *= to_exact(primes[i]);
                term *= local(primes[i]);
                even = even || primes[i] == 2;
            }
        }
        if (!even) {
            term *= two_factor;
        }
        // max{0, v_2(delta(eta)/2)}: 0 for eta = 1 mod 4, 1 for eta = 3 mod 4, 2 for even eta.
        const unsigned long residue = mpz_fdiv_ui(eta.get_mpz_t(), 4);
        const unsigned shift = residue == 1 ? 0 : (residue == 3 ? 1 : 2);
        term /= ExactRational(pow_int(2, static_cast<unsigned long>(shift) * (r + 2)));
        sum += term;
    }
    sum.canonicalize();
    return sum;
}

DensityResult density_prime_generators(const SubgroupPresentation& g, unsigned digits, const PrecisionConfig& config)
{
    if (!generated_by_distinct_primes(g)) {
        throw Error(ErrorKind::NotPrimeGenerators, "closed form needs generators that are distinct primes");
    }
    const unsigned wp = working_digits_for(digits, config);
    PrecisionScope scope(wp + 10);
    std::vector<std::uint64_t> primes;
    for (const auto& gen : g.generators()) {
        primes.push_back(gen.exponents().begin()->first);
    }
    DensityResult result;
    result.method = DensityMethod::PrimeGenerators;
    result.exact_multiplier = prime_generator_multiplier(primes);
    const unsigned r = static_cast<unsigned>(primes.size());
    result.value = to_real(*result.exact_multiplier) *
                   universal_constant(r, 1, std::min(digits + 2, config.max_digits), config);
    result.error_estimate = power_of_ten(-static_cast<int>(digits));
    result.truncation = {{"direct_prime_bound", std::to_string(config.direct_prime_bound)},
                         {"working_digits", std::to_string(wp)}};
    return result;
}

} // namespace avgorder
