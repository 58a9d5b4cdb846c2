#include "avgorder/cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "avgorder/corpus.hpp"
#include "avgorder/density.hpp"
#include "avgorder/errors.hpp"
#include "avgorder/high_precision.hpp"
#include "avgorder/selfcheck.hpp"
#include "avgorder/subgroup.hpp"
#include "avgorder/two_adic.hpp"

namespace avgorder {

namespace {

using Json = nlohmann::ordered_json;

constexpr unsigned kDefaultConstantDigits = 38;
constexpr unsigned kDefaultDensityDigits = 10;
constexpr unsigned kMaxConstantRank = 10;
constexpr std::uint64_t kDefaultSweepLimit = 1'000'000;
constexpr std::size_t kMaxEtaRows = 4096;

std::string format_name(OutputFormat f)
{
    switch (f) {
    case OutputFormat::Text:
        return "text";
    case OutputFormat::Json:
        return "json";
    case OutputFormat::Csv:
        return "csv";
    }
    return "text";
}

std::uint64_t parse_u64(std::string_view text)
{
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw Error(ErrorKind::ParseError, "expected a nonnegative integer, got '" + std::string(text) + "'");
    }
    return value;
}

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

Json config_json(const RunConfig& c)
{
    Json j;
    std::istringstream in(c.echo());
    std::string item;
    while (in >> item) {
        const auto eq = item.find('=');
        j[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return j;
}

// Destination for the report: the output path if one is given, otherwise `out`.
class ReportSink {
public:
    ReportSink(const RunConfig& config, std::ostream& out, bool append = false) : stream_(&out)
    {
        if (config.output_path) {
            file_.open(*config.output_path, append ? std::ios::app : std::ios::trunc);
            if (!file_) {
                throw Error(ErrorKind::InvalidArgument, "cannot open " + *config.output_path);
            }
            stream_ = &file_;
        }
    }

    std::ostream& stream() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

bool file_is_empty(const std::string& path)
{
    std::error_code ec;
    return !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
}

void write_header(std::ostream& os, const RunConfig& c)
{
    os << "# avgorder " << c.command << "\n";
    os << "# config: " << c.echo() << "\n";
}

// density ------------------------------------------------------------------

struct MethodValue {
    std::string method;
    HighPrecisionReal value;
    HighPrecisionReal error_estimate;
    std::vector<std::pair<std::string, std::string>> truncation;
};

std::vector<std::string> requested_methods(const RunConfig& c, const SubgroupPresentation& g)
{
    if (c.method == "all") {
        std::vector<std::string> methods{"euler", "series"};
        if (c.t == 1 && generated_by_distinct_primes(g)) {
            methods.push_back("cor3");
        }
        return methods;
    }
    return {c.method};
}

MethodValue evaluate(const std::string& method, const SubgroupPresentation& g, const RunConfig& c, unsigned digits)
{
    DensityResult r;
    if (method == "euler") {
        r = density_euler(g, c.t, digits);
    } else if (method == "series") {
        r = density_series(g, c.t, c.series_limit);
    } else {
        if (c.t != 1) {
            throw Error(ErrorKind::InvalidArgument, "the prime-generator closed form is only defined for t = 1");
        }
        r = density_prime_generators(g, digits);
    }
    return {to_string(r.method), r.value, r.error_estimate, r.truncation};
}

int cmd_density(const RunConfig& c, std::ostream& out)
{
    const auto g = SubgroupPresentation::parse(c.generators);
    const unsigned digits = c.digits.value_or(kDefaultDensityDigits);
    const auto methods = requested_methods(c, g);

    std::vector<MethodValue> values;
    for (const auto& m : methods) {
        values.push_back(evaluate(m, g, c, digits));
    }
    const ExactRational q = rational_multiplier(g, c.t);
    const auto etas = all_eta(g);

    PrecisionScope scope(std::max(digits, 20U) + 20);
    std::vector<std::pair<std::string, HighPrecisionReal>> deltas;
    for (std::size_t a = 0; a < values.size(); ++a) {
        for (std::size_t b = a + 1; b < values.size(); ++b) {
            deltas.emplace_back(values[a].method + "-" + values[b].method, abs(values[a].value - values[b].value));
        }
    }

    ReportSink sink(c, out);
    std::ostream& os = sink.stream();
    const bool extension = c.t > 1;

    if (c.output == OutputFormat::Json) {
        Json j;
        j["config"] = config_json(c);
        j["generators"] = c.generators;
        j["support"] = Json::array();
        for (auto p : g.support()) {
            j["support"].push_back(std::to_string(p));
        }
        j["rank"] = std::to_string(g.rank());
        j["t"] = std::to_string(c.t);
        j["deltas"] = Json::array();
        for (std::size_t i = 1; i < g.deltas().size(); ++i) {
            j["deltas"].push_back(g.deltas()[i].get_str());
        }
        j["q"] = q.get_str();
        j["q_is_extension"] = extension ? "true" : "false";
        j["values"] = Json::object();
        for (const auto& v : values) {
            Json entry;
            entry["value"] = format_truncated(v.value, digits);
            entry["error_estimate"] = format_scientific(v.error_estimate, 3);
            for (const auto& [k, val] : v.truncation) {
                entry[k] = val;
            }
            j["values"][v.method] = entry;
        }
        j["cross_method"] = Json::object();
        for (const auto& [name, d] : deltas) {
            j["cross_method"][name] = format_scientific(d, 3);
        }
        j["eta"] = Json::array();
        for (std::size_t i = 0; i < etas.size() && i < kMaxEtaRows; ++i) {
            j["eta"].push_back({{"eta", etas[i].eta.get_str()},
                                {"discriminant", etas[i].discriminant.get_str()},
                                {"t_eta", etas[i].depth.to_string()},
                                {"gamma_eta", etas[i].cutoff.to_string()}});
        }
        os << j.dump(2) << "\n";
        return 0;
    }
    if (c.output == OutputFormat::Csv) {
        os << "method,value,error_estimate\n";
        for (const auto& v : values) {
            os << v.method << "," << format_truncated(v.value, digits) << ","
               << format_scientific(v.error_estimate, 3) << "\n";
        }
        return 0;
    }

    write_header(os, c);
    os << g.describe() << "\n";
    os << "t: " << c.t << "\n";
    os << "q = " << q.get_str();
    if (extension) {
        os << "  (t > 1: extension beyond the t = 1 closed forms; cross-check with --method series)";
    }
    os << "\n";
    for (const auto& v : values) {
        os << "C[" << v.method << "] = " << format_truncated(v.value, digits) << "\n";
        os << "  error estimate " << format_scientific(v.error_estimate, 3);
        for (const auto& [k, val] : v.truncation) {
            os << ", " << k << " " << val;
        }
        os << "\n";
    }
    if (!deltas.empty()) {
        os << "cross-method differences:\n";
        for (const auto& [name, d] : deltas) {
            os << "  |" << name << "| = " << format_scientific(d, 3) << "\n";
        }
    }
    os << "eta table (" << etas.size() << " square-free divisors of sigma):\n";
    os << "  " << std::left << std::setw(20) << "eta" << std::setw(22) << "delta(eta)" << std::setw(8) << "t_eta"
       << "gamma_eta\n";
    for (std::size_t i = 0; i < etas.size() && i < kMaxEtaRows; ++i) {
        os << "  " << std::setw(20) << etas[i].eta.get_str() << std::setw(22) << etas[i].discriminant.get_str()
           << std::setw(8) << etas[i].depth.to_string() << etas[i].cutoff.to_string() << "\n";
    }
    if (etas.size() > kMaxEtaRows) {
        os << "  ... " << etas.size() - kMaxEtaRows << " more rows omitted\n";
    }
    os << std::right;
    return 0;
}

// constant -----------------------------------------------------------------

int cmd_constant(const RunConfig& c, std::ostream& out)
{
    const unsigned digits = c.digits.value_or(kDefaultConstantDigits);
    std::vector<unsigned> ranks;
    if (c.rank) {
        if (*c.rank == 0) {
            throw Error(ErrorKind::InvalidArgument, "rank must be >= 1");
        }
        ranks.push_back(*c.rank);
    } else {
        for (unsigned r = 1; r <= kMaxConstantRank; ++r) {
            ranks.push_back(r);
        }
    }
    std::vector<std::pair<unsigned, std::string>> rows;
    for (unsigned r : ranks) {
        rows.emplace_back(r, format_fixed(universal_constant(r, c.t, digits), digits));
    }

    ReportSink sink(c, out);
    std::ostream& os = sink.stream();
    if (c.output == OutputFormat::Json) {
        Json j;
        j["config"] = config_json(c);
        j["t"] = std::to_string(c.t);
        j["digits"] = std::to_string(digits);
        j["constants"] = Json::array();
        for (const auto& [r, v] : rows) {
            j["constants"].push_back({{"r", std::to_string(r)}, {"value", v}});
        }
        os << j.dump(2) << "\n";
    } else if (c.output == OutputFormat::Csv) {
        os << "r,t,value\n";
        for (const auto& [r, v] : rows) {
            os << r << "," << c.t << "," << v << "\n";
        }
    } else {
        write_header(os, c);
        for (const auto& [r, v] : rows) {
            os << "C_{" << r << "," << c.t << "} = " << v << "\n";
        }
    }
    return 0;
}

// sweep --------------------------------------------------------------------

struct SweepRowReport {
    CheckpointRow row;
    std::string a;
    std::string diff;
    std::string normalized;
};

SweepRowReport describe_row(const CheckpointRow& row, const HighPrecisionReal& c_value, unsigned t, unsigned digits)
{
    SweepRowReport rep{row, "", "", ""};
    if (row.sum_p_t == 0) {
        rep.a = rep.diff = rep.normalized = "nan";
        return rep;
    }
    const HighPrecisionReal a = to_real(ExactRational(row.sum_orders_t, row.sum_p_t));
    rep.a = format_truncated(a, digits);
    rep.diff = format_fixed(abs(a - c_value), digits);
    if (row.limit >= 2) {
        const HighPrecisionReal x = pow(HighPrecisionReal(row.limit), t + 1);
        rep.normalized = format_truncated(to_real(row.sum_orders_t) / log_integral(x), digits);
    } else {
        rep.normalized = "nan";
    }
    return rep;
}

SweepOptions sweep_options(const RunConfig& c, std::uint64_t limit)
{
    SweepOptions opts;
    opts.t = c.t;
    opts.limit = limit;
    opts.checkpoints = parse_checkpoint_schedule(c.checkpoints, limit);
    opts.workers = c.workers;
    opts.segment_size = c.segment_size;
    opts.cap = c.cap;
    return opts;
}

int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err)
{
    const auto g = SubgroupPresentation::parse(c.generators);
    const unsigned digits = c.digits.value_or(kDefaultDensityDigits);
    const std::uint64_t limit = c.limit == 0 ? kDefaultSweepLimit : c.limit;
    if (limit > c.cap) {
        throw Error(ErrorKind::LimitTooLarge, "limit " + std::to_string(limit) + " exceeds cap " +
                                                  std::to_string(c.cap));
    }
    SweepOptions opts = sweep_options(c, limit);

    const HighPrecisionReal c_value = density_euler(g, c.t, digits + 2).value;

    if (c.output == OutputFormat::Csv) {
        // Rows are streamed as checkpoints complete.
        const bool header = !c.output_path || file_is_empty(*c.output_path);
        ReportSink sink(c, out, true);
        std::ostream& os = sink.stream();
        if (header) {
            os << kCheckpointCsvHeader << "\n" << std::flush;
        }
        opts.on_checkpoint = [&os](std::size_t, const CheckpointRow& row) {
            os << checkpoint_csv_row(row) << "\n" << std::flush;
        };
        sweep(g, opts);
        return 0;
    }

    const SweepLedger ledger = sweep(g, opts);
    PrecisionScope scope(digits + 30);
    std::vector<SweepRowReport> rows;
    for (const auto& row : ledger.checkpoints) {
        rows.push_back(describe_row(row, c_value, c.t, digits));
    }
    const SweepRowReport final_row = describe_row(ledger.totals(), c_value, c.t, digits);
    const std::string c_text = format_truncated(c_value, digits);

    ReportSink sink(c, out);
    std::ostream& os = sink.stream();
    if (c.output == OutputFormat::Json) {
        // The report schema is fixed, so the effective config goes to stderr.
        err << "# config: " << c.echo() << "\n";
        Json j;
        j["limit"] = std::to_string(ledger.limit_reached);
        j["A"] = final_row.a;
        j["C"] = c_text;
        j["diff"] = final_row.diff;
        j["checkpoints"] = Json::array();
        for (const auto& r : rows) {
            j["checkpoints"].push_back({{"limit", std::to_string(r.row.limit)},
                                        {"prime_count", std::to_string(r.row.prime_count)},
                                        {"sum_orders_t", r.row.sum_orders_t.get_str()},
                                        {"sum_p_t", r.row.sum_p_t.get_str()},
                                        {"A", r.a},
                                        {"diff", r.diff},
                                        {"sum_orders_t_over_li", r.normalized}});
        }
        os << j.dump(2) << "\n";
        return 0;
    }

    write_header(os, c);
    os << g.describe() << "\n";
    os << "t: " << c.t << "\n";
    os << "C (euler) = " << c_text << "\n";
    os << std::left << std::setw(14) << "X" << std::setw(12) << "primes" << std::setw(digits + 4) << "A"
       << std::setw(digits + 4) << "|A - C|" << "sum/li(X^(t+1))\n";
    for (const auto& r : rows) {
        os << std::setw(14) << r.row.limit << std::setw(12) << r.row.prime_count << std::setw(digits + 4) << r.a
           << std::setw(digits + 4) << r.diff << r.normalized << "\n";
    }
    os << std::right;
    os << "sum_orders_t = " << ledger.sum_orders_t.get_str() << "\n";
    os << "sum_p_t = " << ledger.sum_p_t.get_str() << "\n";
    os << "A = " << final_row.a << "\n";
    os << "diff = " << final_row.diff << "\n";
    return 0;
}

// table8 -------------------------------------------------------------------

int cmd_table8(const RunConfig& c, std::ostream& out)
{
    const unsigned digits = c.digits.value_or(kDefaultDensityDigits);
    if (c.max_rank == 0) {
        throw Error(ErrorKind::InvalidArgument, "max rank must be >= 1");
    }
    struct Cell {
        PrimeFamily family;
        unsigned rank;
        std::string generators;
        std::string c;
        std::string a;
    };
    std::vector<Cell> cells;
    std::vector<SubgroupPresentation> groups;
    std::vector<HighPrecisionReal> c_values;
    for (auto family : all_families()) {
        for (unsigned r = 1; r <= c.max_rank; ++r) {
            const std::string gens = join_generators(family_primes(family, r));
            groups.push_back(SubgroupPresentation::parse(gens));
            c_values.push_back(density_euler(groups.back(), c.t, digits + 2).value);
            cells.push_back({family, r, gens, format_truncated(c_values.back(), digits), ""});
        }
    }
    if (c.limit > 0) {
        if (c.limit > c.cap) {
            throw Error(ErrorKind::LimitTooLarge, "limit exceeds cap");
        }
        const auto ledgers = sweep_many(groups, sweep_options(c, c.limit));
        PrecisionScope scope(digits + 20);
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const auto totals = ledgers[i].totals();
            cells[i].a = format_truncated(to_real(ExactRational(totals.sum_orders_t, totals.sum_p_t)), digits);
        }
    }

    ReportSink sink(c, out);
    std::ostream& os = sink.stream();
    if (c.output == OutputFormat::Json) {
        Json j;
        j["config"] = config_json(c);
        j["limit"] = std::to_string(c.limit);
        j["families"] = Json::array();
        for (auto family : all_families()) {
            Json f;
            f["family"] = std::string(family_label(family));
            f["groups"] = Json::array();
            for (const auto& cell : cells) {
                if (cell.family != family) {
                    continue;
                }
                Json entry{{"r", std::to_string(cell.rank)}, {"generators", cell.generators}, {"C", cell.c}};
                if (c.limit > 0) {
                    entry["A"] = cell.a;
                }
                f["groups"].push_back(entry);
            }
            j["families"].push_back(f);
        }
        os << j.dump(2) << "\n";
        return 0;
    }
    if (c.output == OutputFormat::Csv) {
        os << "family,r,generators,C" << (c.limit > 0 ? ",A" : "") << "\n";
        for (const auto& cell : cells) {
            os << family_label(cell.family) << "," << cell.rank << ",\"" << cell.generators << "\"," << cell.c;
            if (c.limit > 0) {
                os << "," << cell.a;
            }
            os << "\n";
        }
        return 0;
    }

    write_header(os, c);
    const int width = static_cast<int>(digits) + 4;
    for (auto family : all_families()) {
        os << "\n" << family_label(family) << "\n";
        os << std::left << std::setw(6) << "r";
        for (unsigned r = 1; r <= c.max_rank; ++r) {
            os << std::setw(width) << r;
        }
        os << "\n" << std::setw(6) << "C";
        for (const auto& cell : cells) {
            if (cell.family == family) {
                os << std::setw(width) << cell.c;
            }
        }
        os << "\n";
        if (c.limit > 0) {
            os << std::setw(6) << "A";
            for (const auto& cell : cells) {
                if (cell.family == family) {
                    os << std::setw(width) << cell.a;
                }
            }
            os << "\n";
        }
        os << std::right;
    }
    return 0;
}

// selfcheck ----------------------------------------------------------------

int cmd_selfcheck(const RunConfig& c, std::ostream& out)
{
    SelfcheckOptions opts;
    opts.seed = c.seed;
    opts.series_limit = c.series_limit;
    opts.inject_delta_fault = c.inject_fault;
    const auto results = run_selfcheck(opts);
    const bool ok = all_passed(results);

    ReportSink sink(c, out);
    std::ostream& os = sink.stream();
    if (c.output == OutputFormat::Json) {
        Json j;
        j["config"] = config_json(c);
        j["passed"] = ok ? "true" : "false";
        j["suites"] = Json::array();
        for (const auto& r : results) {
            j["suites"].push_back({{"name", r.name},
                                   {"passed", r.passed ? "true" : "false"},
                                   {"checks", std::to_string(r.checks)},
                                   {"failures", std::to_string(r.failures)},
                                   {"first_failure", r.first_failure}});
        }
        os << j.dump(2) << "\n";
    } else if (c.output == OutputFormat::Csv) {
        os << "suite,passed,checks,failures\n";
        for (const auto& r : results) {
            os << r.name << "," << (r.passed ? "true" : "false") << "," << r.checks << "," << r.failures << "\n";
        }
    } else {
        write_header(os, c);
        for (const auto& r : results) {
            os << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw(20) << r.name << std::right
               << " checks " << r.checks << ", failures " << r.failures << ", " << std::fixed
               << std::setprecision(2) << r.seconds << " s\n";
            if (!r.passed) {
                os << "     first failure: " << r.first_failure << "\n";
            }
        }
        os << (ok ? "selfcheck passed" : "selfcheck FAILED") << "\n";
    }
    return ok ? static_cast<int>(ExitCode::Ok) : static_cast<int>(ExitCode::SelfcheckFailed);
}

std::optional<std::string> find_config_path(int argc, const char* const* argv)
{
    std::optional<std::string> path;
    for (int i = 1; i < argc; ++i) {
        const std::string_view a = argv[i];
        if (a == "--config" && i + 1 < argc) {
            path = argv[i + 1];
        } else if (a.starts_with("--config=")) {
            path = std::string(a.substr(9));
        }
    }
    return path;
}

std::vector<std::string> arguments_with_config(int argc, const char* const* argv)
{
    std::vector<std::string> args(argv, argv + argc);
    const auto path = find_config_path(argc, argv);
    if (!path || argc < 2) {
        return args;
    }
    std::vector<std::string> extra = read_config_file(*path);
    args.insert(args.begin() + 2, extra.begin(), extra.end());
    return args;
}

} // namespace

std::vector<std::string> read_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::InvalidArgument, "cannot read config file " + path);
    }
    std::vector<std::string> args;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty() || line.front() == '[') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorKind::ParseError, "config line without '=': " + line);
        }
        std::string key = trim(std::string_view(line).substr(0, eq));
        std::string value = trim(std::string_view(line).substr(eq + 1));
        if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front()) {
            value = value.substr(1, value.size() - 2);
        }
        if (key.empty() || key == "config") {
            throw Error(ErrorKind::ParseError, "invalid config key in line: " + line);
        }
        std::replace(key.begin(), key.end(), '_', '-');
        args.push_back("--" + key);
        args.push_back(value);
    }
    return args;
}

std::string RunConfig::echo() const
{
    std::ostringstream os;
    os << "command=" << command;
    if (!generators.empty()) {
        os << " generators=" << generators;
    }
    os << " t=" << t << " method=" << method;
    os << " digits=" << (digits ? std::to_string(*digits) : std::string("default"));
    os << " series_limit=" << series_limit << " limit=" << limit << " checkpoints=" << checkpoints;
    os << " workers=" << workers << " output=" << format_name(output);
    if (output_path) {
        os << " output_path=" << *output_path;
    }
    if (rank) {
        os << " rank=" << *rank;
    }
    os << " max_rank=" << max_rank << " cap=" << cap << " segment_size=" << segment_size;
    return os.str();
}

std::vector<std::uint64_t> parse_checkpoint_schedule(const std::string& text, std::uint64_t limit)
{
    std::vector<std::uint64_t> out;
    if (text == "pow10") {
        out = power_of_ten_schedule(limit);
    } else {
        std::istringstream in(text);
        std::string item;
        while (std::getline(in, item, ',')) {
            out.push_back(parse_u64(trim(item)));
        }
        if (out.empty()) {
            throw Error(ErrorKind::ParseError, "empty checkpoint list");
        }
    }
    std::erase_if(out, [limit](std::uint64_t x) { return x == 0 || x > limit; });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string checkpoint_csv_row(const CheckpointRow& row)
{
    return std::to_string(row.limit) + "," + std::to_string(row.prime_count) + "," + row.sum_orders_t.get_str() +
           "," + row.sum_p_t.get_str();
}

std::vector<CheckpointRow> parse_checkpoint_csv(std::istream& in)
{
    std::vector<CheckpointRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line == kCheckpointCsvHeader) {
            continue;
        }
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) {
            fields.push_back(field);
        }
        if (fields.size() != 4) {
            throw Error(ErrorKind::ParseError, "checkpoint row needs 4 fields: " + line);
        }
        CheckpointRow row;
        row.limit = parse_u64(fields[0]);
        row.prime_count = parse_u64(fields[1]);
        if (row.sum_orders_t.set_str(fields[2], 10) != 0 || row.sum_p_t.set_str(fields[3], 10) != 0) {
            throw Error(ErrorKind::ParseError, "malformed integer in checkpoint row: " + line);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig config;
    config.workers = std::max(1U, std::thread::hardware_concurrency());

    CLI::App app{"Average multiplicative order densities for subgroups of the positive rationals"};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::string output = "text";
    std::string output_path;
    unsigned digits = 0;
    unsigned rank = 0;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--t", config.t, "Moment exponent t >= 1")->check(CLI::PositiveNumber);
        sub->add_option("--digits", digits, "Decimal digits in the report");
        sub->add_option("--workers", config.workers, "Worker threads for sweeps")->check(CLI::PositiveNumber);
        sub->add_option("--output", output, "Report format")->check(CLI::IsMember({"text", "json", "csv"}));
        sub->add_option("--output-path", output_path, "Write the report to this file");
        sub->add_option("--series-limit", config.series_limit, "Truncation K of the series method");
        sub->add_option("--limit", config.limit, "Sweep limit X");
        sub->add_option("--checkpoints", config.checkpoints, "pow10 or a comma-separated list of limits");
        sub->add_option("--cap", config.cap, "Largest accepted sweep limit");
        sub->add_option("--segment-size", config.segment_size, "Sieve segment length")->check(CLI::PositiveNumber);
        sub->add_option("--config", config_path, "Read `key = value` defaults from a file");
        for (auto* opt : sub->get_options()) {
            opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
        }
    };

    auto* density = app.add_subcommand("density", "Density constant C_{Gamma,t} of a subgroup");
    density->add_option("--generators", config.generators, "Comma-separated generators, e.g. 2,3 or 3/2,5")
        ->required();
    density->add_option("--method", config.method, "Evaluation method")
        ->check(CLI::IsMember({"euler", "series", "cor3", "all"}));
    add_common(density);

    auto* constant = app.add_subcommand("constant", "Universal constants C_{r,t}");
    constant->add_option("--rank", rank, "Rank r (default: r = 1..10)");
    add_common(constant);

    auto* sweep_cmd = app.add_subcommand("sweep", "Empirical sum of |Gamma_p|^t over primes p <= X");
    sweep_cmd->add_option("--generators", config.generators, "Comma-separated generators")->required();
    add_common(sweep_cmd);

    auto* table8 = app.add_subcommand("table8", "Densities of the prime-generated families");
    table8->add_option("--max-rank", config.max_rank, "Largest rank per family");
    add_common(table8);

    auto* selfcheck = app.add_subcommand("selfcheck", "Run the oracle-equivalence suites");
    selfcheck->add_option("--seed", config.seed, "Seed for the randomized suites");
    selfcheck->add_flag("--inject-fault", config.inject_fault)->group("");
    add_common(selfcheck);

    // Config-file values are inserted right after the subcommand so that the
    // command-line flags that follow take precedence.
    std::vector<std::string> args;
    try {
        args = arguments_with_config(argc, argv);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::UsageError);
    }
    std::vector<const char*> arg_pointers;
    for (const auto& a : args) {
        arg_pointers.push_back(a.c_str());
    }

    try {
        app.parse(static_cast<int>(arg_pointers.size()), arg_pointers.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : static_cast<int>(ExitCode::UsageError);
    }

    CLI::App* chosen = app.get_subcommands().front();
    config.command = chosen->get_name();
    config.output = output == "json" ? OutputFormat::Json : output == "csv" ? OutputFormat::Csv : OutputFormat::Text;
    if (!output_path.empty()) {
        config.output_path = output_path;
    }
    if (chosen->count("--digits") > 0) {
        config.digits = digits;
    }
    if (chosen == constant && constant->count("--rank") > 0) {
        config.rank = rank;
    }

    try {
        if (chosen == density) {
            return cmd_density(config, out);
        }
        if (chosen == constant) {
            return cmd_constant(config, out);
        }
        if (chosen == sweep_cmd) {
            return cmd_sweep(config, out, err);
        }
        if (chosen == table8) {
            return cmd_table8(config, out);
        }
        return cmd_selfcheck(config, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return static_cast<int>(is_input_error(e.kind()) ? ExitCode::UsageError : ExitCode::ComputationError);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::ComputationError);
    }
}

} // namespace avgorder
