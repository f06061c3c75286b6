#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rsh::cli {

/// Exit codes: 0 success, 1 I/O or processing failure, 2 bad flags or config.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point shared by the executable and the tests. `args` excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rsh::cli
