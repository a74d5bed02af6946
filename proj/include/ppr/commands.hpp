#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ppr {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitGuaranteeMissed = 1;  // verify: failures above the allowed band
inline constexpr int kExitArgument = 2;
inline constexpr int kExitValidation = 3;

/// Parses `args` (without the program name) and runs one subcommand.
/// Results go to --out/--diag files when given, otherwise to `out`; errors
/// go to `err`. Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ppr
