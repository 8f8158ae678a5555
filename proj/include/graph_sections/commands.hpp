#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graph_sections/config.hpp"
#include "graph_sections/report.hpp"

namespace graph_sections {

enum class Command { enumerate, maxcheck, certify, solve };

std::optional<Command> parse_command(const std::string& name);
std::string to_string(Command c);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int internal = 1;
inline constexpr int config = 2;
inline constexpr int failure = 3;
inline constexpr int unsupported = 4;
} // namespace exit_code

/// Command-line values that take precedence over the config file.
struct Overrides {
    std::optional<std::size_t> k;
    std::vector<std::size_t> ladder;
    std::optional<std::uint64_t> seed;
    std::optional<std::pair<std::size_t, std::uint64_t>> falsify;
    std::optional<double> epsilon;
    std::optional<std::string> rhs_path;
    std::optional<std::filesystem::path> verify_path;
    std::optional<std::filesystem::path> dump_matrix;
};

struct CommandResult {
    ordered_json report;
    int exit_code = exit_code::ok;
};

/// Runs one command. Library errors become an `error` block in the report
/// plus the matching exit code; nothing escapes except bugs.
CommandResult run_command(Command command, RunConfig config, const Overrides& overrides = {});

/// Loads the config file first; config errors produce an error report too.
CommandResult run_command_file(Command command, const std::filesystem::path& config_path,
                               const Overrides& overrides = {});

/// Exit code for an exception raised by the library.
int exit_code_for(const std::exception& e);

} // namespace graph_sections
