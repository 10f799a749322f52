#pragma once

#include <ostream>

namespace nilm::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;  // generation, validation, I/O or scoring error
inline constexpr int kUsage = 2;    // unknown flag, bad value, missing argument

/// Environment variable naming the default output root.
inline constexpr const char* kOutputRootEnv = "NILM_OUTPUT_ROOT";

/// Entry point of the `nilm` tool; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nilm::cli
