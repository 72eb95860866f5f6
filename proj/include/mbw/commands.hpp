#pragma once

// Command-line front end. `run` parses argv and dispatches; it never calls
// exit(), so tests can drive it in-process.
//
// Exit status: 0 success, 1 verification failure, 2 usage error,
// 3 runtime or numeric error.

#include <iosfwd>
#include <string>
#include <vector>

namespace mbw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRuntime = 3;

inline constexpr const char* kVersion = "0.1.0";
/// Default output directory when --out is not given.
inline constexpr const char* kOutDirEnv = "MBWELL_OUT_DIR";

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mbw::cli
