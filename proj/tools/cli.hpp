#pragma once

#include <iosfwd>

namespace emoa::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `emoa` tool: run, replay, sweep, select and report.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace emoa::cli
