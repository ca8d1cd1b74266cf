// Command-line entry point.  dispatch() is the whole tool behind a
// testable interface: argv in, exit code out, payload and diagnostics on
// the given streams.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace arcline {

inline constexpr const char* kToolName = "arcline";
inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes: 0 success, 1 runtime error, 2 usage error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace arcline
