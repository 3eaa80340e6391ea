#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ontmed::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitStrict = 1;
inline constexpr int kExitUsage = 2;

/// Runs one `ontmed` invocation. `args` excludes the program name. Data goes
/// to `out`, diagnostics to `err`. `ONTMED_OUT` supplies the default --out.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ontmed::cli
