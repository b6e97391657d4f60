#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dupdel/theory.hpp"

namespace dupdel::cli {

enum class Command { Simulate, Theory, Compare, Asymptotics, OracleCheck };
enum class Format { Csv, Json };

enum ExitCode : int { kSuccess = 0, kValidation = 1, kNumeric = 2, kIo = 3 };

/// Invalid flag value; what() starts with the offending flag, e.g. "--p: ...".
class UsageError : public std::invalid_argument {
public:
    UsageError(std::string_view flag, std::string_view message)
        : std::invalid_argument(std::string(flag) + ": " + std::string(message)) {}
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    Command command = Command::Theory;
    double p = 0.5;
    std::uint64_t steps = 0;
    std::uint64_t seed = 1;
    std::optional<std::size_t> K;  // empty: truncation rule
    double tol = kDefaultTolerance;
    std::vector<std::uint64_t> checkpoints;  // empty: final step only
    std::size_t replicas = 1;
    std::string output_path;  // empty: standard output
    Format format = Format::Csv;
    double threshold = 1e-8;  // oracle-check pass/fail bound
};

/// Non-negative integer in plain or scientific notation ("1000000", "1e6",
/// "2.5e3"), parsed exactly; fractional results and overflow are rejected.
/// Throws UsageError naming `flag`.
std::uint64_t parse_count(std::string_view text, std::string_view flag);

/// Comma-separated parse_count values.
std::vector<std::uint64_t> parse_checkpoints(std::string_view text);

/// Throws UsageError for the first invalid flag.
void validate(const RunConfig& config);

/// Writes through a temporary file renamed into place; empty path writes to
/// `fallback`. Throws IoError.
void write_output(const std::string& path, std::ostream& fallback,
                  const std::function<void(std::ostream&)>& body);

int cmd_simulate(const RunConfig& config, std::ostream& console);
int cmd_theory(const RunConfig& config, std::ostream& console);
int cmd_compare(const RunConfig& config, std::ostream& console);
int cmd_asymptotics(const RunConfig& config, std::ostream& console);
int cmd_oracle_check(const RunConfig& config, std::ostream& console);

/// Validates, dispatches, and maps exceptions to exit codes with a message on
/// `errors`.
int run(const RunConfig& config, std::ostream& console, std::ostream& errors);

}  // namespace dupdel::cli
