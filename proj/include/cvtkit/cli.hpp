#pragma once

#include <iosfwd>
#include <stdexcept>

namespace cvtkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;      // bad flags, unparsable operands
inline constexpr int kExitInvariant = 3;  // internal oracle mismatch

/// Full command dispatch; writes exactly one report to `out` on success.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Exit code for an exception escaping a command handler.
int exit_code_for(const std::exception& error);

}  // namespace cvtkit::cli
