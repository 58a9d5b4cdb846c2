#include <doctest.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "avgorder/cli.hpp"
#include "avgorder/errors.hpp"
#include "avgorder/subgroup.hpp"
#include "avgorder/sweep.hpp"

using namespace avgorder;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "avgorder");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string& haystack, const std::string& needle)
{
    return haystack.find(needle) != std::string::npos;
}

// True when every leaf of the document is a string.
bool only_strings(const nlohmann::json& j)
{
    if (j.is_object() || j.is_array()) {
        for (const auto& item : j) {
            if (!only_strings(item)) {
                return false;
            }
        }
        return true;
    }
    return j.is_string();
}

std::filesystem::path temp_file(const std::string& name)
{
    auto path = std::filesystem::temp_directory_path() / ("avgorder_test_" + name);
    std::filesystem::remove(path);
    return path;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("density with the prime-generator closed form")
{
    const auto r = run({"density", "--generators", "2", "--t", "1", "--method", "cor3", "--digits", "10"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "C[cor3] = 0.5723602190\n"));
    CHECK(contains(r.out, "q = 159/160\n"));
    CHECK(contains(r.out, "# config: command=density generators=2 t=1 method=cor3 digits=10"));
    CHECK(contains(r.out, "Delta_1 = 1"));
}

TEST_CASE("density of the first seven primes")
{
    const auto r = run({"density", "--generators", "2,3,5,7,11,13,17", "--t", "1"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "C[euler] = 0.9959315465\n"));
}

TEST_CASE("density with every method reports cross-method differences")
{
    const auto r = run({"density", "--generators", "2,3", "--method", "all"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "C[euler] = 0.8234094709"));
    CHECK(contains(r.out, "C[series] = 0.8234094709"));
    CHECK(contains(r.out, "C[cor3] = 0.8234094709"));
    CHECK(contains(r.out, "|euler-series|"));
    CHECK(contains(r.out, "|euler-cor3|"));
    CHECK(contains(r.out, "q = 4927/4928"));
    // eta table rows: eta, delta(eta), t_eta, gamma_eta
    CHECK(contains(r.out, "6                   24                    0       3"));
}

TEST_CASE("density for t = 2 flags the multiplier as an extension")
{
    const auto r = run({"density", "--generators", "2,3", "--t", "2", "--digits", "12"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "q = 1472249/1472000  (t > 1: extension"));
    CHECK(contains(r.out, "C[euler] = 0.755232626828"));
    CHECK(run({"density", "--generators", "2", "--t", "2", "--method", "cor3"}).code == 2);
}

TEST_CASE("density input errors exit with 2")
{
    const auto negative = run({"density", "--generators", "-2"});
    CHECK(negative.code == 2);
    CHECK(contains(negative.err, "NonPositive"));
    CHECK(run({"density", "--generators", "0"}).code == 2);
    CHECK(run({"density", "--generators", "x"}).code == 2);
    CHECK(run({"density", "--generators", "1"}).code == 2);
    CHECK(run({"density", "--generators", "4", "--method", "cor3"}).code == 2);
    CHECK(run({"density", "--generators", "2", "--method", "bogus"}).code == 2);
    CHECK(run({"density"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"density", "--generators", "2", "--t", "0"}).code == 2);
}

TEST_CASE("density JSON")
{
    const auto r = run({"density", "--generators", "4,27", "--method", "all", "--output", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(only_strings(j));
    CHECK(j["deltas"] == nlohmann::json::array({"1", "6"}));
    CHECK(j["values"].contains("euler"));
    CHECK(j["values"].contains("series"));
    CHECK_FALSE(j["values"].contains("cor3"));
    CHECK(j["config"]["method"] == "all");
    CHECK(j["eta"].size() == 4);
}

TEST_CASE("constants")
{
    const auto r2 = run({"constant", "--rank", "2"});
    CHECK(r2.code == 0);
    CHECK(contains(r2.out, "C_{2,1} = 0.82357659279814332395380438513901050177\n"));
    const auto r9 = run({"constant", "--rank", "9"});
    CHECK(contains(r9.out, "C_{9,1} = 0.99900593591154969071253065973483263"));
    const auto r1 = run({"constant", "--rank", "1", "--digits", "5"});
    CHECK(contains(r1.out, "C_{1,1} = 0.57596\n"));
    const auto all = run({"constant", "--digits", "20", "--output", "csv"});
    CHECK(all.code == 0);
    CHECK(contains(all.out, "r,t,value\n1,1,0.57595996889294543964\n"));
    CHECK(contains(all.out, "10,1,0.99950593624928276115\n"));
    const auto too_many = run({"constant", "--rank", "2", "--digits", "61"});
    CHECK(too_many.code == 3);
    CHECK(contains(too_many.err, "PrecisionUnreachable"));
    const auto j = nlohmann::json::parse(run({"constant", "--rank", "3", "--output", "json"}).out);
    CHECK(only_strings(j));
    CHECK(j["constants"][0]["value"].get<std::string>().size() == 40);
}

TEST_CASE("sweep of <2,3> to 10^6")
{
    const auto r = run({"sweep", "--generators", "2,3", "--limit", "1000000", "--output", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(only_strings(j));
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) {
        keys.push_back(k);
    }
    std::sort(keys.begin(), keys.end());
    CHECK(keys == std::vector<std::string>{"A", "C", "checkpoints", "diff", "limit"});
    CHECK(j["limit"] == "1000000");
    CHECK(std::stod(j["diff"].get<std::string>()) < 3e-3);
    CHECK(j["checkpoints"].size() == 6);
    CHECK(contains(r.err, "# config: command=sweep"));
}

TEST_CASE("sweep text report")
{
    const auto r = run({"sweep", "--generators", "2", "--limit", "10000", "--checkpoints", "500,5000"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "C (euler) = 0.5723602190"));
    CHECK(contains(r.out, "sum/li(X^(t+1))"));
    CHECK(contains(r.out, "\n500 "));
    CHECK(contains(r.out, "\n5000 "));
    CHECK(contains(r.out, "\n10000 "));
    CHECK(run({"sweep", "--generators", "2", "--limit", "100", "--checkpoints", "1,x"}).code == 2);
}

TEST_CASE("small sweep matches brute force quickly")
{
    const auto start = std::chrono::steady_clock::now();
    const auto r = run({"sweep", "--generators", "2,3", "--limit", "1000", "--output", "csv"});
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(r.code == 0);
    CHECK(seconds < 1.0);
    std::istringstream in(r.out);
    const auto rows = parse_checkpoint_csv(in);
    REQUIRE(rows.size() == 3);
    const auto g = SubgroupPresentation::parse("2,3");
    CheckpointRow brute;
    brute.limit = 1000;
    for (std::uint64_t p = 2; p <= 1000; ++p) {
        bool prime = true;
        for (std::uint64_t d = 2; d * d <= p; ++d) {
            prime = prime && p % d != 0;
        }
        if (prime) {
            ++brute.prime_count;
            brute.sum_orders_t += brute_force_group_order(g, p);
            brute.sum_p_t += p;
        }
    }
    CHECK(rows.back() == brute);
}

TEST_CASE("CSV checkpoint files are append-only and parse back exactly")
{
    const auto path = temp_file("checkpoints.csv");
    const std::vector<std::string> base{"sweep", "--generators", "3/2,5", "--t", "3", "--limit", "200000",
                                        "--output", "csv", "--output-path", path.string()};
    REQUIRE(run(base).code == 0);
    REQUIRE(run(base).code == 0);
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    const std::string content = text.str();
    CHECK(content.rfind(kCheckpointCsvHeader, 0) == 0);
    CHECK(content.find(kCheckpointCsvHeader, 1) == std::string::npos);

    std::istringstream parse_in(content);
    const auto rows = parse_checkpoint_csv(parse_in);
    SweepOptions opts;
    opts.t = 3;
    opts.limit = 200000;
    opts.checkpoints = power_of_ten_schedule(200000);
    const auto ledger = sweep(SubgroupPresentation::parse("3/2,5"), opts);
    REQUIRE(rows.size() == 2 * ledger.checkpoints.size());
    for (std::size_t i = 0; i < ledger.checkpoints.size(); ++i) {
        CHECK(rows[i] == ledger.checkpoints[i]);
        CHECK(rows[i + ledger.checkpoints.size()] == ledger.checkpoints[i]);
    }
    std::filesystem::remove(path);
}

TEST_CASE("sweep limit above the cap")
{
    const auto r = run({"sweep", "--generators", "2", "--limit", "100000000000"});
    CHECK(r.code == 2);
    CHECK(contains(r.err, "LimitTooLarge"));
    CHECK(run({"sweep", "--generators", "2", "--limit", "2000", "--cap", "1000"}).code == 2);
}

TEST_CASE("sweep reports do not depend on the worker count")
{
    const auto one = run({"sweep", "--generators", "2,3", "--limit", "1000000", "--workers", "1", "--output", "json"});
    const auto eight = run({"sweep", "--generators", "2,3", "--limit", "1000000", "--workers", "8", "--output", "json"});
    CHECK(one.code == 0);
    CHECK(one.out == eight.out);
}

TEST_CASE("table8")
{
    const auto r = run({"table8"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "0.9220082264"));
    CHECK(contains(r.out, "0.9828302996"));
    CHECK_FALSE(contains(r.out, "\nA "));
    const auto with_sweep = run({"table8", "--limit", "20000", "--max-rank", "3", "--output", "json"});
    REQUIRE(with_sweep.code == 0);
    const auto j = nlohmann::json::parse(with_sweep.out);
    CHECK(only_strings(j));
    REQUIRE(j["families"].size() == 3);
    CHECK(j["families"][2]["groups"][2]["C"] == "0.9220082264");
    CHECK(j["families"][2]["groups"][2]["generators"] == "5,13,17");
    CHECK(j["families"][0]["groups"][0].contains("A"));
    const auto text = run({"table8", "--limit", "1000", "--max-rank", "2"});
    CHECK(contains(text.out, "\nA "));
}

TEST_CASE("selfcheck")
{
    const auto ok = run({"selfcheck"});
    CHECK(ok.code == 0);
    CHECK(contains(ok.out, "selfcheck passed"));
    const auto broken = run({"selfcheck", "--inject-fault"});
    CHECK(broken.code == 1);
    CHECK(contains(broken.out, "FAIL snf_minors"));
}

TEST_CASE("config file precedence")
{
    const auto path = temp_file("config.ini");
    {
        std::ofstream out(path);
        out << "# defaults\n[density]\nt = 2\nmethod = series\nseries_limit = 1000\n";
    }
    const auto from_file = run({"density", "--generators", "2,3", "--config", path.string()});
    CHECK(from_file.code == 0);
    CHECK(contains(from_file.out, "t=2 method=series"));
    CHECK(contains(from_file.out, "series_limit=1000 "));
    const auto overridden = run({"density", "--generators", "2,3", "--config", path.string(), "--t", "1"});
    CHECK(contains(overridden.out, "t=1 method=series"));
    {
        std::ofstream out(path);
        out << "no_such_key = 3\n";
    }
    CHECK(run({"density", "--generators", "2", "--config", path.string()}).code == 2);
    CHECK(run({"density", "--generators", "2", "--config", "/nonexistent/avgorder.ini"}).code == 2);
    std::filesystem::remove(path);
}

TEST_CASE("report written to an output path")
{
    const auto path = temp_file("report.txt");
    const auto r = run({"constant", "--rank", "1", "--digits", "10", "--output-path", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(contains(text.str(), "C_{1,1} = 0.5759599689"));
    std::filesystem::remove(path);
}

TEST_CASE("checkpoint schedules")
{
    CHECK(parse_checkpoint_schedule("pow10", 1000) == std::vector<std::uint64_t>{10, 100, 1000});
    CHECK(parse_checkpoint_schedule("500, 20,20,5000", 1000) == std::vector<std::uint64_t>{20, 500});
    CHECK_THROWS_AS(parse_checkpoint_schedule("", 1000), Error);
    CHECK_THROWS_AS(parse_checkpoint_schedule("1,-2", 1000), Error);
}

}
