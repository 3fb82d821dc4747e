#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nlgbidi {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidationFailures = 1,
  kExitUsage = 2,
  kExitIo = 3,
};

// Runs one subcommand. args excludes the program name. Reports go to --out
// when given, otherwise to `out`; the one-line JSON summary goes to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nlgbidi
