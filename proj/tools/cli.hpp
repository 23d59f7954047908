#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chemeq::cli {

inline constexpr int kExitConverged = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNotConverged = 2;

inline constexpr int kSchemaVersion = 1;

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Reads `key = value` lines of a structured document; comments and blank
/// lines are skipped.
std::vector<std::pair<std::string, std::string>> parse_structured(const std::string& document);

}  // namespace chemeq::cli
