#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "avgorder/sweep.hpp"

namespace avgorder {

enum class ExitCode : int {
    Ok = 0,
    SelfcheckFailed = 1,
    UsageError = 2,
    ComputationError = 3,
};

enum class OutputFormat { Text, Json, Csv };

struct RunConfig {
    std::string command;
    std::string generators;
    unsigned t = 1;
    std::string method = "euler";
    std::optional<unsigned> digits;
    std::uint64_t series_limit = 100000;
    std::uint64_t limit = 0;
    std::string checkpoints = "pow10";
    unsigned workers = 1;
    OutputFormat output = OutputFormat::Text;
    std::optional<std::string> output_path;
    std::optional<unsigned> rank;
    unsigned max_rank = 7;
    std::uint64_t cap = kDefaultSweepCap;
    std::uint64_t segment_size = kDefaultSegmentSize;
    std::uint64_t seed = 0x5eed2024;
    bool inject_fault = false;

    // "key=value ..." in a fixed order, echoed into report headers.
    std::string echo() const;
};

// Parses `pow10` or a comma-separated list of limits; the result is sorted,
// deduplicated and clipped to the sweep limit.
std::vector<std::uint64_t> parse_checkpoint_schedule(const std::string& text, std::uint64_t limit);

inline constexpr const char* kCheckpointCsvHeader = "X,prime_count,sum_orders_t,sum_p_t";

std::string checkpoint_csv_row(const CheckpointRow& row);
// Reads rows written by checkpoint_csv_row; header lines are skipped.
std::vector<CheckpointRow> parse_checkpoint_csv(std::istream& in);

// `key = value` lines (blank lines, `#` comments and `[section]` headers are
// ignored) as the equivalent `--key value` arguments.
std::vector<std::string> read_config_file(const std::string& path);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace avgorder
