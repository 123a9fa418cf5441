#ifndef COMMACT_CLI_HPP
#define COMMACT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace commact {

enum ExitCode : int {
  kExitPositive = 0,
  kExitNegative = 1,
  kExitInconclusive = 2,
  kExitUsage = 3,
  kExitBudget = 4,
};

// args excludes the program name. The last line written to `out` is always
// "RESULT: <token>".
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace commact

#endif  // COMMACT_CLI_HPP
