#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace motzkin::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
    kSuccess = 0,
    kHardFailure = 1,  // a proved identity or the generation conjecture failed
    kUsage = 2,        // bad flags, budget exceeded, degenerate or out-of-scope request
};

/// Runs one command line (without the program name). Output goes to `out`,
/// diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Checks a JSON document emitted by `run` against the per-command schema.
/// Returns an empty string when valid, otherwise the first problem found.
std::string schema_problem(const nlohmann::json& doc);

}  // namespace motzkin::cli
