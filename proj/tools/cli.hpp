#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace uamsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInfeasible = 3;

/// Runs one command line (args exclude the program name). Everything the
/// command prints goes to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace uamsim::cli
