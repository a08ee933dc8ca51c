// cli.hpp
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nbagg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitUsage = 2;

// Environment variable holding the default worker count; --threads wins.
inline constexpr const char* kThreadsEnv = "NBAGG_THREADS";

/// Runs one command. `args` excludes the program name. Results go to `out`,
/// diagnostics to `err`. Returns 0 on success, 1 when the input data is
/// invalid, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nbagg::cli
