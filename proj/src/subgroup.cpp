#include "avgorder/subgroup.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "avgorder/errors.hpp"
#include "avgorder/factor.hpp"

namespace avgorder {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

ExactInt parse_integer(std::string_view digits, std::string_view whole)
{
    std::string_view body = digits;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        body.remove_prefix(1);
    }
    if (body.empty() || !std::all_of(body.begin(), body.end(),
                                     [](unsigned char c) { return std::isdigit(c) != 0; })) {
        throw Error(ErrorKind::ParseError, "malformed generator '" + std::string(whole) + "'");
    }
    return ExactInt(std::string(digits[0] == '+' ? digits.substr(1) : digits));
}

} // namespace

FactoredPositiveRational::FactoredPositiveRational(std::map<std::uint64_t, long> exponents)
{
    for (auto [p, e] : exponents) {
        if (e == 0) {
            continue;
        }
        if (!is_prime_u64(p)) {
            throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
        }
        exponents_.emplace(p, e);
    }
}

long FactoredPositiveRational::exponent(std::uint64_t p) const
{
    auto it = exponents_.find(p);
    return it == exponents_.end() ? 0 : it->second;
}

ExactRational FactoredPositiveRational::value() const
{
    ExactRational out = 1;
    for (auto [p, e] : exponents_) {
        out *= pow_rational(p, e);
    }
    return out;
}

std::string FactoredPositiveRational::to_string() const { return value().get_str(); }

FactoredPositiveRational parse_generator(std::string_view text)
{
    const std::string_view token = trim(text);
    if (token.empty()) {
        throw Error(ErrorKind::ParseError, "empty generator");
    }
    const auto slash = token.find('/');
    ExactInt num = parse_integer(trim(token.substr(0, slash)), token);
    ExactInt den = slash == std::string_view::npos ? ExactInt(1)
                                                   : parse_integer(trim(token.substr(slash + 1)), token);
    if (num == 0 || den == 0) {
        throw Error(ErrorKind::ZeroGenerator, "generator '" + std::string(token) + "' has a zero part");
    }
    if (sgn(num) * sgn(den) < 0) {
        throw Error(ErrorKind::NonPositive,
                    "generator '" + std::string(token) + "' is negative; only subgroups of Q+ are supported");
    }
    num = abs(num);
    den = abs(den);

    std::map<std::uint64_t, long> exps;
    for (const auto& [p, e] : factor_positive(num)) {
        exps[to_u64(p)] += static_cast<long>(e);
    }
    for (const auto& [p, e] : factor_positive(den)) {
        exps[to_u64(p)] -= static_cast<long>(e);
    }
    return FactoredPositiveRational(std::move(exps));
}

std::vector<FactoredPositiveRational> parse_generator_list(std::string_view text)
{
    std::vector<FactoredPositiveRational> out;
    while (true) {
        const auto comma = text.find(',');
        out.push_back(parse_generator(text.substr(0, comma)));
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    return out;
}

SubgroupPresentation SubgroupPresentation::build(std::vector<FactoredPositiveRational> generators)
{
    if (generators.empty()) {
        throw Error(ErrorKind::TrivialGroup, "no generators given");
    }
    SubgroupPresentation g;
    std::set<std::uint64_t> support;
    for (auto& gen : generators) {
        if (gen.is_one()) {
            continue;
        }
        for (auto [p, e] : gen.exponents()) {
            support.insert(p);
        }
        g.generators_.push_back(std::move(gen));
    }
    if (g.generators_.empty()) {
        throw Error(ErrorKind::TrivialGroup, "every generator equals 1");
    }
    if (support.size() > kMaxSupport) {
        throw Error(ErrorKind::SupportTooLarge,
                    "support has " + std::to_string(support.size()) + " primes, at most " +
                        std::to_string(kMaxSupport) + " supported");
    }
    g.support_.assign(support.begin(), support.end());
    for (auto p : g.support_) {
        g.sigma_ *= to_exact(p);
    }

    IntMatrix valuations(g.support_.size(), g.generators_.size());
    for (std::size_t j = 0; j < g.generators_.size(); ++j) {
        for (std::size_t i = 0; i < g.support_.size(); ++i) {
            valuations(i, j) = g.generators_[j].exponent(g.support_[i]);
        }
    }
    g.basis_ = column_hermite_basis(valuations);
    if (g.basis_.cols() == 0) {
        throw Error(ErrorKind::TrivialGroup, "generators span the trivial group");
    }
    g.smith_ = smith_normal_form(g.basis_);
    g.deltas_.reserve(g.smith_.divisors.size() + 1);
    g.deltas_.emplace_back(1);
    for (const auto& d : g.smith_.divisors) {
        g.deltas_.push_back(g.deltas_.back() * d);
    }
    return g;
}

SubgroupPresentation SubgroupPresentation::parse(std::string_view generator_list)
{
    return build(parse_generator_list(generator_list));
}

std::vector<FactoredPositiveRational> SubgroupPresentation::basis_generators() const
{
    std::vector<FactoredPositiveRational> out;
    for (std::size_t j = 0; j < basis_.cols(); ++j) {
        std::map<std::uint64_t, long> exps;
        for (std::size_t i = 0; i < support_.size(); ++i) {
            exps[support_[i]] = basis_(i, j).get_si();
        }
        out.emplace_back(std::move(exps));
    }
    return out;
}

ExactInt SubgroupPresentation::group_order_mod_kth_powers(const ExactInt& m) const
{
    if (m < 1) {
        throw Error(ErrorKind::InvalidArgument, "m must be positive");
    }
    const unsigned r = rank();
    ExactInt g = pow_int(m, r);
    for (unsigned i = 1; i <= r; ++i) {
        ExactInt term = pow_int(m, r - i) * deltas_[i];
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), term.get_mpz_t());
    }
    ExactInt out = pow_int(m, r);
    mpz_divexact(out.get_mpz_t(), out.get_mpz_t(), g.get_mpz_t());
    return out;
}

unsigned SubgroupPresentation::delta_valuation(std::size_t i, std::uint64_t p) const
{
    return valuation(deltas_.at(i), p);
}

unsigned SubgroupPresentation::local_order_exponent(std::uint64_t p, unsigned alpha) const
{
    long best = 0;
    for (unsigned i = 1; i <= rank(); ++i) {
        best = std::max(best, static_cast<long>(i) * alpha - static_cast<long>(delta_valuation(i, p)));
    }
    return static_cast<unsigned>(best);
}

ExactInt SubgroupPresentation::local_order(std::uint64_t p, unsigned alpha) const
{
    return pow_int(p, local_order_exponent(p, alpha));
}

unsigned SubgroupPresentation::stabilization_exponent(std::uint64_t p) const
{
    unsigned k = 0;
    for (const auto& d : smith_.divisors) {
        k = std::max(k, valuation(d, p));
    }
    return k;
}

std::string SubgroupPresentation::describe() const
{
    std::ostringstream os;
    os << "generators:";
    for (const auto& g : generators_) {
        os << ' ' << g.to_string();
    }
    os << "\nsupport:";
    for (auto p : support_) {
        os << ' ' << p;
    }
    os << "\nrank: " << rank() << "\nbasis matrix: " << basis_.to_string() << "\nelementary divisors:";
    for (const auto& d : smith_.divisors) {
        os << ' ' << d.get_str();
    }
    for (std::size_t i = 1; i < deltas_.size(); ++i) {
        os << "\nDelta_" << i << " = " << deltas_[i].get_str();
    }
    return os.str();
}

} // namespace avgorder
