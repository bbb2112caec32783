#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace liftgeom {

// Exit codes of run().
inline constexpr int exit_ok = 0;
inline constexpr int exit_check_failed = 1;
inline constexpr int exit_invalid_input = 2;
inline constexpr int exit_internal = 3;

// Runs one command line (without the program name). Writes a JSON report to
// out and diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace liftgeom
