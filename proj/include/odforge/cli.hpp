#pragma once

#include <ostream>

namespace odforge::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kUnsupported = 2,
  kVerificationFailed = 3,
  kParseFailure = 4,
};

/// Environment variable naming the default output directory of `gen`.
inline constexpr const char* kOutDirEnv = "ODFORGE_OUT_DIR";

/// Command-line entry point; everything the tool prints goes through out/err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace odforge::cli
