#include "avgorder/selfcheck.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "avgorder/arithmetic.hpp"
#include "avgorder/corpus.hpp"
#include "avgorder/density.hpp"
#include "avgorder/errors.hpp"
#include "avgorder/factor.hpp"
#include "avgorder/int_matrix.hpp"
#include "avgorder/kummer.hpp"
#include "avgorder/oracles.hpp"
#include "avgorder/sweep.hpp"
#include "avgorder/two_adic.hpp"

namespace avgorder {

namespace {

constexpr std::uint64_t kSmallPrimes[] = {2, 3, 5, 7, 11, 13};

class SuiteRecorder {
public:
    explicit SuiteRecorder(std::string name) : start_(std::chrono::steady_clock::now())
    {
        result_.name = std::move(name);
    }

    void check(bool ok, const std::string& context)
    {
        ++result_.checks;
        if (!ok) {
            if (result_.failures == 0) {
                result_.first_failure = context;
            }
            ++result_.failures;
            result_.passed = false;
        }
    }

    SuiteResult finish()
    {
        const auto elapsed = std::chrono::steady_clock::now() - start_;
        result_.seconds = std::chrono::duration<double>(elapsed).count();
        return result_;
    }

private:
    SuiteResult result_;
    std::chrono::steady_clock::time_point start_;
};

std::vector<SubgroupPresentation> random_presentations(const SelfcheckOptions& options, unsigned max_support,
                                                       unsigned max_generators, int max_exponent)
{
    std::mt19937_64 rng(options.seed);
    std::vector<SubgroupPresentation> out;
    out.reserve(options.random_presentations);
    while (out.size() < options.random_presentations) {
        out.push_back(random_presentation(rng, max_support, max_generators, max_exponent));
    }
    return out;
}

std::vector<SubgroupPresentation> corpus_presentations()
{
    std::vector<SubgroupPresentation> out;
    for (const auto& text : corpus_generator_lists()) {
        out.push_back(SubgroupPresentation::parse(text));
    }
    return out;
}

std::string label(const SubgroupPresentation& g)
{
    std::string out = "<";
    for (const auto& gen : g.generators()) {
        out += (out.size() > 1 ? "," : "") + gen.to_string();
    }
    return out + ">";
}

std::vector<int> mask_vector(std::uint32_t mask, std::size_t length)
{
    std::vector<int> v(length);
    for (std::size_t i = 0; i < length; ++i) {
        v[i] = (mask >> i) & 1U;
    }
    return v;
}

// Generator valuations as columns.
IntMatrix generator_matrix(const SubgroupPresentation& g)
{
    const auto& support = g.support();
    IntMatrix m(support.size(), g.generators().size());
    for (std::size_t j = 0; j < g.generators().size(); ++j) {
        for (std::size_t i = 0; i < support.size(); ++i) {
            m(i, j) = g.generators()[j].exponent(support[i]);
        }
    }
    return m;
}

IntMatrix concat_columns(const IntMatrix& a, const IntMatrix& b)
{
    IntMatrix m(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            m(i, j) = a(i, j);
        }
        for (std::size_t j = 0; j < b.cols(); ++j) {
            m(i, a.cols() + j) = b(i, j);
        }
    }
    return m;
}

bool is_smith_diagonal(const IntMatrix& d, const std::vector<ExactInt>& divisors)
{
    for (std::size_t i = 0; i < d.rows(); ++i) {
        for (std::size_t j = 0; j < d.cols(); ++j) {
            const ExactInt expected = (i == j && i < divisors.size()) ? divisors[i] : ExactInt(0);
            if (d(i, j) != expected) {
                return false;
            }
        }
    }
    for (std::size_t i = 0; i < divisors.size(); ++i) {
        if (divisors[i] <= 0 || (i > 0 && divisors[i] % divisors[i - 1] != 0)) {
            return false;
        }
    }
    return true;
}

bool smith_consistent(const IntMatrix& a, const SmithDecomposition& snf)
{
    if (snf.left * a * snf.right != snf.diagonal) {
        return false;
    }
    if (abs(determinant(snf.left)) != 1 || abs(determinant(snf.right)) != 1) {
        return false;
    }
    return is_smith_diagonal(snf.diagonal, snf.divisors);
}

} // namespace

SubgroupPresentation random_presentation(std::mt19937_64& rng, unsigned max_support, unsigned max_generators,
                                         int max_exponent)
{
    std::uniform_int_distribution<unsigned> support_dist(1, max_support);
    std::uniform_int_distribution<unsigned> gen_dist(1, max_generators);
    std::uniform_int_distribution<int> exp_dist(-max_exponent, max_exponent);
    while (true) {
        const unsigned s = support_dist(rng);
        const unsigned n = gen_dist(rng);
        std::vector<FactoredPositiveRational> gens;
        for (unsigned j = 0; j < n; ++j) {
            std::map<std::uint64_t, long> exps;
            for (unsigned i = 0; i < s; ++i) {
                const int e = exp_dist(rng);
                if (e != 0) {
                    exps[kSmallPrimes[i]] = e;
                }
            }
            gens.emplace_back(std::move(exps));
        }
        try {
            return SubgroupPresentation::build(std::move(gens));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::TrivialGroup) {
                throw;
            }
        }
    }
}

SuiteResult check_smith_against_minors(const SelfcheckOptions& options)
{
    SuiteRecorder rec("snf_minors");
    std::mt19937_64 rng(options.seed ^ 0x51);
    std::uniform_int_distribution<int> entry(-6, 6);
    std::uniform_int_distribution<unsigned> dim(1, 5);
    for (unsigned trial = 0; trial < 2 * options.random_presentations; ++trial) {
        const unsigned rows = dim(rng);
        const unsigned cols = std::uniform_int_distribution<unsigned>(1, rows)(rng);
        IntMatrix a(rows, cols);
        for (unsigned i = 0; i < rows; ++i) {
            for (unsigned j = 0; j < cols; ++j) {
                a(i, j) = entry(rng);
            }
        }
        const auto snf = smith_normal_form(a);
        std::ostringstream ctx;
        ctx << "matrix " << a.to_string();
        rec.check(smith_consistent(a, snf), ctx.str() + ": U A V != D");
        ExactInt product = 1;
        for (std::size_t i = 0; i < cols; ++i) {
            const ExactInt minors = oracle::gcd_of_minors(a, i + 1);
            const ExactInt reported = i < snf.divisors.size() ? ExactInt(product * snf.divisors[i]) : ExactInt(0);
            rec.check(minors == reported, ctx.str() + ": Delta_" + std::to_string(i + 1) + " mismatch");
            if (i < snf.divisors.size()) {
                product *= snf.divisors[i];
            }
        }
    }

    for (const auto& g : random_presentations(options, 4, 3, 4)) {
        const auto& basis = g.basis_matrix();
        const unsigned r = g.rank();
        std::vector<ExactInt> deltas = g.deltas();
        if (options.inject_delta_fault) {
            deltas.back() *= 2;
        }
        rec.check(smith_consistent(basis, g.smith()), label(g) + ": U A V != D");
        for (unsigned i = 0; i < r; ++i) {
            rec.check(oracle::gcd_of_minors(basis, i + 1) == deltas[i + 1],
                      label(g) + ": Delta_" + std::to_string(i + 1) + " differs from minors");
        }
        // Same lattice: appending the original generators changes no r x r minor gcd.
        const IntMatrix gens = generator_matrix(g);
        rec.check(oracle::gcd_of_minors(gens, r) == deltas[r] &&
                      oracle::gcd_of_minors(concat_columns(basis, gens), r) == deltas[r],
                  label(g) + ": basis spans a different lattice");
    }
    return rec.finish();
}

SuiteResult check_coset_membership(const SelfcheckOptions& options)
{
    SuiteRecorder rec("coset_membership");
    for (const auto& g : random_presentations(options, 4, 3, 4)) {
        const std::size_t s = g.support_size();
        for (unsigned v = 1; v <= 5; ++v) {
            const oracle::LatticeImage image(g.basis_matrix(), std::uint64_t{1} << v);
            for (std::uint32_t mask = 0; mask < (1U << s); ++mask) {
                const auto vec = mask_vector(mask, s);
                std::vector<std::int64_t> target(s);
                for (std::size_t i = 0; i < s; ++i) {
                    target[i] = vec[i] * (std::int64_t{1} << (v - 1));
                }
                const bool expected = image.contains(target);
                rec.check(coset_member(g, vec, v) == expected,
                          label(g) + ": eta mask " + std::to_string(mask) + ", v = " + std::to_string(v));
            }
        }
    }
    return rec.finish();
}

SuiteResult check_depth_scan(const SelfcheckOptions& options)
{
    SuiteRecorder rec("depth_scan");
    constexpr unsigned kScanLimit = 40;
    auto groups = random_presentations(options, 4, 3, 4);
    for (auto& g : corpus_presentations()) {
        if (g.support_size() <= 8) {
            groups.push_back(std::move(g));
        }
    }
    for (const auto& g : groups) {
        const std::size_t s = g.support_size();
        for (std::uint32_t mask = 0; mask < (1U << s); ++mask) {
            const auto vec = mask_vector(mask, s);
            ExtendedCount scanned = ExtendedCount::infinity();
            bool previous = false;
            bool monotone = true;
            for (unsigned t = 0; t <= kScanLimit; ++t) {
                const bool member = coset_member(g, vec, t + 1);
                monotone = monotone && (!previous || member);
                if (member && !previous) {
                    scanned = ExtendedCount(t);
                }
                previous = previous || member;
            }
            const std::string ctx = label(g) + ": eta mask " + std::to_string(mask);
            rec.check(monotone, ctx + ": membership not monotone in v");
            rec.check(eta_depth(g, mask) == scanned, ctx + ": depth " + eta_depth(g, mask).to_string() +
                                                         " vs scan " + scanned.to_string());
        }
    }
    return rec.finish();
}

SuiteResult check_image_orders(const SelfcheckOptions& options)
{
    SuiteRecorder rec("image_orders");
    for (const auto& g : random_presentations(options, 3, 3, 4)) {
        for (std::uint64_t m : {2, 3, 4, 6, 8, 12, 16}) {
            const ExactInt expected(static_cast<unsigned long>(oracle::image_order_mod(g.basis_matrix(), m)));
            rec.check(g.group_order_mod_kth_powers(ExactInt(static_cast<unsigned long>(m))) == expected,
                      label(g) + ": |Gamma(" + std::to_string(m) + ")|");
        }
    }
    return rec.finish();
}

SuiteResult check_group_orders(const SelfcheckOptions& options)
{
    SuiteRecorder rec("group_order_mod_p");
    const auto primes = primes_up_to(static_cast<std::uint32_t>(options.order_prime_bound - 1));
    auto groups = corpus_presentations();
    for (auto& g : random_presentations(options, 4, 3, 4)) {
        groups.push_back(std::move(g));
    }
    for (const auto& g : groups) {
        const GeneratorResidues residues(g);
        for (std::uint32_t p : primes) {
            if (p == 2 || residues.in_support(p)) {
                continue;
            }
            const std::uint64_t fast = group_order_mod_p(g, p);
            const std::uint64_t brute = brute_force_group_order(g, p);
            rec.check(fast == brute && (p - 1) % fast == 0,
                      label(g) + ": p = " + std::to_string(p) + ", " + std::to_string(fast) + " vs " +
                          std::to_string(brute));
        }
    }
    return rec.finish();
}

SuiteResult check_method_agreement(const SelfcheckOptions& options)
{
    SuiteRecorder rec("method_agreement");
    for (const auto& g : corpus_presentations()) {
        const bool prime_generated = generated_by_distinct_primes(g);
        HighPrecisionReal euler_value;
        {
            PrecisionScope scope(40);
            euler_value = density_euler(g, 1, 25).value;
            if (prime_generated) {
                const auto cor3 = density_prime_generators(g, 25).value;
                const HighPrecisionReal gap = abs(cor3 - euler_value);
                rec.check(gap <= power_of_ten(-20), label(g) + ": closed form differs from Euler product");
            }
        }
        if (g.rank() < 2) {
            continue;
        }
        const auto series = density_series(g, 1, options.series_limit);
        PrecisionScope scope(40);
        const HighPrecisionReal gap = abs(series.value - euler_value);
        rec.check(gap <= series.error_estimate && gap <= HighPrecisionReal("1e-4"),
                  label(g) + ": series gap " + format_fixed(gap, 20) + " vs estimate " +
                      format_fixed(series.error_estimate, 20));
    }
    return rec.finish();
}

SuiteResult check_tilde_closure(const SelfcheckOptions& options)
{
    SuiteRecorder rec("tilde_closure");
    auto groups = random_presentations(options, 4, 3, 4);
    for (auto& g : corpus_presentations()) {
        if (g.support_size() <= 10) {
            groups.push_back(std::move(g));
        }
    }
    for (const auto& g : groups) {
        for (unsigned k = 1; k <= 512; ++k) {
            const auto set = tilde_gamma_set(g, ExactInt(k));
            const std::string ctx = label(g) + ": k = " + std::to_string(k);
            const bool has_identity = std::find(set.begin(), set.end(), 0U) != set.end();
            bool closed = has_identity;
            for (std::size_t a = 0; closed && a < set.size(); ++a) {
                for (std::size_t b = a; closed && b < set.size(); ++b) {
                    closed = std::find(set.begin(), set.end(), squarefree_product(set[a], set[b])) != set.end();
                }
            }
            rec.check(closed, ctx + ": eta set not closed");
            const std::size_t n = set.size();
            rec.check(n > 0 && (n & (n - 1)) == 0, ctx + ": order not a power of two");
            rec.check(k % 2 == 1 ? n == 1 : true, ctx + ": odd k with nontrivial eta set");
        }
    }
    return rec.finish();
}

SuiteResult check_degrees(const SelfcheckOptions& options)
{
    SuiteRecorder rec("kummer_degree");
    for (const auto& g : corpus_presentations()) {
        const KummerDegree kummer(g);
        const unsigned r = g.rank();
        const ExactInt& delta_r = g.deltas().back();
        for (std::uint64_t k = 1; k <= options.degree_limit; ++k) {
            const std::string ctx = label(g) + ": k = " + std::to_string(k);
            ExactInt degree;
            try {
                degree = kummer.degree(k);
            } catch (const Error& e) {
                rec.check(false, ctx + ": " + e.what());
                continue;
            }
            const ExactInt phi = to_exact(euler_phi(k));
            const ExactInt kr = pow_int(to_exact(k), r);
            // (k/2)^r / Delta_r <= degree / phi(k) <= 2 k^r
            const bool lower = kr * phi <= degree * pow_int(ExactInt(2), r) * delta_r;
            const bool upper = degree <= 2 * kr * phi;
            rec.check(lower && upper, ctx + ": degree " + degree.get_str() + " outside bounds");
            if (k % 2 == 1) {
                rec.check(degree == phi * g.group_order_mod_kth_powers(to_exact(k)),
                          ctx + ": odd k degree differs from phi(k)|Gamma(k)|");
            }
        }
    }
    return rec.finish();
}

std::vector<SuiteResult> run_selfcheck(const SelfcheckOptions& options)
{
    return {
        check_smith_against_minors(options),
        check_coset_membership(options),
        check_depth_scan(options),
        check_image_orders(options),
        check_group_orders(options),
        check_method_agreement(options),
        check_tilde_closure(options),
        check_degrees(options),
    };
}

bool all_passed(const std::vector<SuiteResult>& results)
{
    return std::all_of(results.begin(), results.end(), [](const SuiteResult& r) { return r.passed; });
}

} // namespace avgorder
