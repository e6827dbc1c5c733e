#pragma once

#include <iosfwd>

namespace zgs {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitManifold = 3;
inline constexpr int kExitIntegration = 4;

/// Entry point of the `zgs` tool: run | sweep | analyze | validate.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zgs
