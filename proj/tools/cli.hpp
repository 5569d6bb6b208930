#pragma once

#include <ostream>

namespace oseq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyViolation = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitBudget = 4;

/// Parses arguments and runs one subcommand. Normal output goes to `out`,
/// progress and diagnostics to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace oseq::cli
