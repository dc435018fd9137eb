#pragma once

// The quiverkit command line: analyze | frame | reduce | verify.
//
// Every command builds a JSON report first; the text output is rendered from
// that report, so both carry the same numbers.
//
// Exit codes: 0 success, 1 assumption or verification failure, 2 input error.

#include "quiverkit/spec_file.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace quiverkit::cli {

inline constexpr const char* kSchemaVersion = "1.0";

enum ExitCode : int { kSuccess = 0, kFailure = 1, kInputError = 2 };

struct CommandOptions {
    std::optional<std::string> i;  // vertex names; fall back to the framing block
    std::optional<std::string> j;
    std::optional<std::int64_t> scale;
    std::optional<std::int64_t> prime;
    std::optional<std::uint64_t> budget;
    std::optional<std::uint64_t> seed;
    bool override_assumptions = false;
};

struct CommandResult {
    nlohmann::json report;
    int exit_code = kSuccess;
};

CommandResult analyze(const QuiverSpec& spec, const CommandOptions& options);
CommandResult frame(const QuiverSpec& spec, const CommandOptions& options);
CommandResult reduce(const QuiverSpec& spec, const CommandOptions& options);
CommandResult verify(const QuiverSpec& spec, const CommandOptions& options);

/// Human-readable rendering of a report.
void render_text(const nlohmann::json& report, std::ostream& out);

/// Full command line (without the program name). Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace quiverkit::cli
