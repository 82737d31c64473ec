#pragma once

#include <ostream>

namespace ffvar::cli {

inline constexpr const char* kVersion = "ffvar 1.0.0";

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kPrecondition = 2;
inline constexpr int kBudget = 3;
inline constexpr int kUnknownSubcommand = 64;
inline constexpr int kInternal = 70;
}  // namespace exit_code

/// Runs one subcommand. Reports go to `out` (or --out), errors to `err` as
/// {"error": {"kind", "message"}}.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Quick invariant suite; one line per check, returns the failure count.
int selftest(std::ostream& out);

}  // namespace ffvar::cli
