#include "avgorder/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <mutex>
#include <numeric>
#include <optional>
#include <thread>

#include "avgorder/errors.hpp"

namespace avgorder {

namespace {

using u128 = unsigned __int128;

std::uint64_t isqrt(std::uint64_t n)
{
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) {
        --r;
    }
    while ((r + 1) * (r + 1) <= n) {
        ++r;
    }
    return r;
}

ExactInt from_u128(u128 v)
{
    const std::uint64_t limbs[2] = {static_cast<std::uint64_t>(v >> 64), static_cast<std::uint64_t>(v)};
    ExactInt out;
    mpz_import(out.get_mpz_t(), 2, 1, sizeof(std::uint64_t), 0, 0, limbs);
    return out;
}

// Exact running sum of x^t, buffered in 128 bits.
class PowerSum {
public:
    explicit PowerSum(unsigned t) : t_(t) {}

    void add(std::uint64_t x)
    {
        u128 value = x;
        for (unsigned i = 1; i < t_; ++i) {
            if (__builtin_mul_overflow(value, static_cast<u128>(x), &value)) {
                big_ += pow_int(x, t_);
                return;
            }
        }
        if (small_ > ~u128{0} - value) {
            big_ += from_u128(small_);
            small_ = 0;
        }
        small_ += value;
    }

    ExactInt total() const { return big_ + from_u128(small_); }

private:
    unsigned t_;
    u128 small_ = 0;
    ExactInt big_ = 0;
};

std::vector<bool> sieve_segment(std::uint64_t lo, std::uint64_t hi, std::span<const std::uint32_t> base_primes)
{
    std::vector<bool> prime(hi - lo + 1, true);
    for (std::uint64_t n = lo; n <= hi && n < 2; ++n) {
        prime[n - lo] = false;
    }
    for (std::uint32_t p : base_primes) {
        const std::uint64_t pp = static_cast<std::uint64_t>(p) * p;
        if (pp > hi) {
            break;
        }
        std::uint64_t start = std::max(pp, (lo + p - 1) / p * p);
        for (std::uint64_t m = start; m <= hi; m += p) {
            prime[m - lo] = false;
        }
    }
    return prime;
}

struct Unit {
    std::uint64_t lo;
    std::uint64_t hi;
    std::size_t checkpoint; // index of the checkpoint this unit completes toward
};

struct UnitResult {
    std::uint64_t prime_count = 0;
    std::vector<ExactInt> orders;
    std::vector<ExactInt> powers;
};

} // namespace

void SweepLedger::merge(const SweepLedger& other)
{
    limit_reached = std::max(limit_reached, other.limit_reached);
    prime_count += other.prime_count;
    sum_orders_t += other.sum_orders_t;
    sum_p_t += other.sum_p_t;
    std::vector<CheckpointRow> merged;
    merged.reserve(checkpoints.size() + other.checkpoints.size());
    std::merge(checkpoints.begin(), checkpoints.end(), other.checkpoints.begin(), other.checkpoints.end(),
               std::back_inserter(merged), [](const CheckpointRow& a, const CheckpointRow& b) {
                   if (a.limit != b.limit) {
                       return a.limit < b.limit;
                   }
                   return a.prime_count < b.prime_count;
               });
    checkpoints = std::move(merged);
}

std::vector<std::uint64_t> primes_in_segment(std::uint64_t lo, std::uint64_t hi, std::uint64_t max_length)
{
    if (lo < 2 || lo > hi || hi > (std::uint64_t{1} << 63) - 1) {
        throw Error(ErrorKind::InvalidArgument, "segment must satisfy 2 <= lo <= hi < 2^63");
    }
    if (hi - lo > max_length) {
        throw Error(ErrorKind::SegmentTooLarge, "segment length " + std::to_string(hi - lo) + " exceeds " +
                                                    std::to_string(max_length));
    }
    const std::uint64_t root = isqrt(hi);
    if (root > 0xffffffffULL) {
        throw Error(ErrorKind::SegmentTooLarge, "base primes beyond 32 bits");
    }
    const auto base = primes_up_to(static_cast<std::uint32_t>(root));
    const auto prime = sieve_segment(lo, hi, base);
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = lo; n <= hi; ++n) {
        if (prime[n - lo]) {
            out.push_back(n);
        }
    }
    return out;
}

std::vector<PrimePower> factor_pminus1(std::uint64_t p, std::span<const std::uint32_t> base_primes)
{
    std::vector<PrimePower> out;
    std::uint64_t rest = p - 1;
    for (std::uint32_t l : base_primes) {
        if (static_cast<std::uint64_t>(l) * l > rest) {
            break;
        }
        if (rest % l != 0) {
            continue;
        }
        unsigned e = 0;
        do {
            rest /= l;
            ++e;
        } while (rest % l == 0);
        out.emplace_back(l, e);
    }
    if (rest > 1) {
        out.emplace_back(rest, 1);
    }
    return out;
}

std::vector<PrimePower> factor_pminus1(std::uint64_t p)
{
    if (p < 3) {
        throw Error(ErrorKind::InvalidArgument, "factor_pminus1 needs p >= 3");
    }
    const auto base = primes_up_to(static_cast<std::uint32_t>(isqrt(p - 1)));
    return factor_pminus1(p, base);
}

std::uint64_t element_order(std::uint64_t g, std::uint64_t p, std::span<const PrimePower> pminus1)
{
    g %= p;
    if (g == 0) {
        throw Error(ErrorKind::ZeroResidue, "residue is 0 mod " + std::to_string(p));
    }
    std::uint64_t e = p - 1;
    for (auto [l, k] : pminus1) {
        for (unsigned i = 0; i < k && pow_mod(g, e / l, p) == 1; ++i) {
            e /= l;
        }
    }
    return e;
}

GeneratorResidues::GeneratorResidues(const SubgroupPresentation& g) : support_(g.support())
{
    const IntMatrix& a = g.basis_matrix();
    numerators_.resize(a.cols());
    denominators_.resize(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) {
            const long e = a(i, j).get_si();
            if (e > 0) {
                numerators_[j].push_back({i, static_cast<unsigned long>(e)});
            } else if (e < 0) {
                denominators_[j].push_back({i, static_cast<unsigned long>(-e)});
            }
        }
    }
}

bool GeneratorResidues::in_support(std::uint64_t p) const
{
    return std::binary_search(support_.begin(), support_.end(), p);
}

void GeneratorResidues::residues(std::uint64_t p, std::vector<std::uint64_t>& out) const
{
    out.resize(numerators_.size());
    for (std::size_t j = 0; j < numerators_.size(); ++j) {
        std::uint64_t num = 1 % p, den = 1 % p;
        for (const auto& term : numerators_[j]) {
            num = mul_mod(num, pow_mod(support_[term.support_index] % p, term.exponent, p), p);
        }
        for (const auto& term : denominators_[j]) {
            den = mul_mod(den, pow_mod(support_[term.support_index] % p, term.exponent, p), p);
        }
        out[j] = denominators_[j].empty() ? num : mul_mod(num, pow_mod(den, p - 2, p), p);
    }
}

std::uint64_t GeneratorResidues::group_order(std::uint64_t p, std::span<const PrimePower> pminus1) const
{
    if (p == 2 || in_support(p)) {
        return 1;
    }
    thread_local std::vector<std::uint64_t> gens;
    residues(p, gens);
    // Gamma_p is cyclic, so its order is the lcm of the generator orders; each
    // l-part is the largest l-part among generators.
    std::uint64_t order = 1;
    for (auto [l, k] : pminus1) {
        const std::uint64_t cofactor_exp = [&] {
            std::uint64_t e = p - 1;
            for (unsigned i = 0; i < k; ++i) {
                e /= l;
            }
            return e;
        }();
        unsigned best = 0;
        for (std::uint64_t g : gens) {
            std::uint64_t h = pow_mod(g, cofactor_exp, p);
            unsigned j = 0;
            while (h != 1) {
                h = pow_mod(h, l, p);
                ++j;
            }
            best = std::max(best, j);
            if (best == k) {
                break;
            }
        }
        for (unsigned i = 0; i < best; ++i) {
            order *= l;
        }
    }
    return order;
}

std::uint64_t group_order_mod_p(const SubgroupPresentation& g, std::uint64_t p)
{
    if (p < 2 || !is_prime_u64(p)) {
        throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
    }
    const GeneratorResidues residues(g);
    if (p == 2 || residues.in_support(p)) {
        return 1;
    }
    const auto factors = factor_pminus1(p);
    std::vector<std::uint64_t> gens;
    residues.residues(p, gens);
    std::uint64_t order = 1;
    for (std::uint64_t x : gens) {
        order = std::lcm(order, element_order(x, p, factors));
    }
    return order;
}

std::uint64_t brute_force_group_order(const SubgroupPresentation& g, std::uint64_t p)
{
    if (p > 100'000) {
        throw Error(ErrorKind::InvalidArgument, "brute force limited to p <= 10^5");
    }
    for (auto q : g.support()) {
        if (q == p) {
            return 1;
        }
    }
    std::vector<std::uint64_t> gens;
    for (const auto& gen : g.generators()) {
        std::uint64_t num = 1 % p, den = 1 % p;
        for (auto [q, e] : gen.exponents()) {
            const std::uint64_t f = pow_mod(q % p, static_cast<std::uint64_t>(std::labs(e)), p);
            (e > 0 ? num : den) = (e > 0 ? num : den) * f % p;
        }
        std::uint64_t inv = 1;
        for (std::uint64_t x = 1; x < p; ++x) {
            if (den * x % p == 1) {
                inv = x;
                break;
            }
        }
        gens.push_back(num * inv % p);
    }
    std::vector<bool> seen(p, false);
    std::vector<std::uint64_t> frontier{1 % p};
    seen[1 % p] = true;
    std::uint64_t count = 1;
    while (!frontier.empty()) {
        const std::uint64_t x = frontier.back();
        frontier.pop_back();
        for (std::uint64_t gen : gens) {
            const std::uint64_t y = x * gen % p;
            if (!seen[y]) {
                seen[y] = true;
                ++count;
                frontier.push_back(y);
            }
        }
    }
    return count;
}

std::vector<std::uint64_t> power_of_ten_schedule(std::uint64_t limit)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = 10; x < limit; x *= 10) {
        out.push_back(x);
        if (x > limit / 10) {
            break;
        }
    }
    out.push_back(limit);
    return out;
}

std::vector<SweepLedger> sweep_many(std::span<const SubgroupPresentation> groups, const SweepOptions& options)
{
    if (options.t == 0) {
        throw Error(ErrorKind::InvalidArgument, "t must be >= 1");
    }
    if (options.limit > options.cap) {
        throw Error(ErrorKind::LimitTooLarge, "limit " + std::to_string(options.limit) + " exceeds cap " +
                                                  std::to_string(options.cap));
    }
    if (options.workers == 0) {
        throw Error(ErrorKind::InvalidArgument, "workers must be >= 1");
    }
    if (options.segment_size == 0) {
        throw Error(ErrorKind::InvalidArgument, "segment size must be >= 1");
    }
    const std::uint64_t limit = options.limit;
    std::vector<std::uint64_t> schedule;
    for (auto c : options.checkpoints) {
        if (c >= 2 && c < limit) {
            schedule.push_back(c);
        }
    }
    schedule.push_back(limit);
    std::sort(schedule.begin(), schedule.end());
    schedule.erase(std::unique(schedule.begin(), schedule.end()), schedule.end());

    std::vector<SweepLedger> ledgers(groups.size());
    for (auto& l : ledgers) {
        l.limit_reached = limit;
    }
    if (limit < 2) {
        return ledgers;
    }

    std::vector<Unit> units;
    std::uint64_t start = 2;
    for (std::size_t c = 0; c < schedule.size(); ++c) {
        const std::uint64_t end = schedule[c];
        if (end < start) {
            continue;
        }
        for (std::uint64_t lo = start; lo <= end;) {
            const std::uint64_t hi = std::min(end, lo + options.segment_size - 1);
            units.push_back({lo, hi, c});
            if (hi == end) {
                break;
            }
            lo = hi + 1;
        }
        start = end + 1;
    }

    const auto base_primes = primes_up_to(static_cast<std::uint32_t>(isqrt(limit)));
    std::vector<GeneratorResidues> reducers;
    reducers.reserve(groups.size());
    for (const auto& g : groups) {
        reducers.emplace_back(g);
    }

    auto process = [&](const Unit& unit) {
        UnitResult result;
        std::vector<PowerSum> orders(groups.size(), PowerSum(options.t));
        std::vector<PowerSum> powers(1, PowerSum(options.t));
        const auto is_prime_flag = sieve_segment(unit.lo, unit.hi, base_primes);
        std::vector<PrimePower> factors;
        for (std::uint64_t p = unit.lo; p <= unit.hi; ++p) {
            if (!is_prime_flag[p - unit.lo]) {
                continue;
            }
            ++result.prime_count;
            powers[0].add(p);
            if (p == 2) {
                for (auto& o : orders) {
                    o.add(1);
                }
                continue;
            }
            factors = factor_pminus1(p, base_primes);
            for (std::size_t i = 0; i < groups.size(); ++i) {
                orders[i].add(reducers[i].group_order(p, factors));
            }
        }
        for (auto& o : orders) {
            result.orders.push_back(o.total());
        }
        result.powers.push_back(powers[0].total());
        return result;
    };

    std::vector<std::optional<UnitResult>> results(units.size());
    std::mutex mutex;
    std::condition_variable ready;
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;

    auto worker = [&] {
        while (true) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= units.size()) {
                return;
            }
            try {
                UnitResult r = process(units[idx]);
                std::lock_guard lock(mutex);
                results[idx] = std::move(r);
            } catch (...) {
                std::lock_guard lock(mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next.store(units.size());
            }
            ready.notify_all();
        }
    };

    const unsigned thread_count = static_cast<unsigned>(
        std::min<std::size_t>(options.workers, std::max<std::size_t>(units.size(), 1)));
    std::vector<std::thread> threads;
    for (unsigned i = 1; i < thread_count; ++i) {
        threads.emplace_back(worker);
    }
    // The calling thread merges in unit order; with one worker it does all the work itself.
    std::uint64_t prime_count = 0;
    ExactInt sum_p = 0;
    std::vector<ExactInt> sum_orders(groups.size(), ExactInt(0));
    for (std::size_t idx = 0; idx < units.size(); ++idx) {
        if (thread_count == 1) {
            results[idx] = process(units[idx]);
        } else {
            std::unique_lock lock(mutex);
            ready.wait(lock, [&] { return results[idx].has_value() || failure; });
            if (failure) {
                break;
            }
        }
        UnitResult r = std::move(*results[idx]);
        results[idx].reset();
        prime_count += r.prime_count;
        sum_p += r.powers[0];
        for (std::size_t i = 0; i < groups.size(); ++i) {
            sum_orders[i] += r.orders[i];
        }
        const bool closes_checkpoint = idx + 1 == units.size() || units[idx + 1].checkpoint != units[idx].checkpoint;
        if (closes_checkpoint) {
            const std::uint64_t x = schedule[units[idx].checkpoint];
            for (std::size_t i = 0; i < groups.size(); ++i) {
                CheckpointRow row{x, prime_count, sum_orders[i], sum_p};
                ledgers[i].checkpoints.push_back(row);
                if (options.on_checkpoint) {
                    options.on_checkpoint(i, row);
                }
            }
        }
    }
    for (auto& t : threads) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    for (std::size_t i = 0; i < groups.size(); ++i) {
        ledgers[i].prime_count = prime_count;
        ledgers[i].sum_orders_t = sum_orders[i];
        ledgers[i].sum_p_t = sum_p;
    }
    return ledgers;
}

SweepLedger sweep(const SubgroupPresentation& g, const SweepOptions& options)
{
    return sweep_many(std::span<const SubgroupPresentation>(&g, 1), options).front();
}

} // namespace avgorder
