#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace topologic::cli {

// Exit codes shared by every command.
constexpr int kExitPositive = 0;  // valid / satisfiable / all checks passed
constexpr int kExitNegative = 1;  // counterexample or no model within bound
constexpr int kExitInputError = 2;
constexpr int kExitInternal = 3;  // a construction guarantee failed

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace topologic::cli
