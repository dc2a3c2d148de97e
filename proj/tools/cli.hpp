#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace projkit::cli {

// Exit codes returned by run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitBadInput = 2;

// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace projkit::cli
