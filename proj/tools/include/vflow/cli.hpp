#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vflow {

// Process exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitFormat = 4;
inline constexpr int kExitSolver = 5;
inline constexpr int kExitConfig = 6;

/// Runs the tool on `args` (without the program name).
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_main(int argc, char** argv);

}  // namespace vflow
