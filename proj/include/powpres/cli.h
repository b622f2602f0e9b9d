// Command-line front end. Exit codes: 0 sat / found, 1 unsat / nothing found,
// 2 unknown, 3 usage or domain error.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace powpres {

enum ExitCode
{
  kExitSat = 0,
  kExitUnsat = 1,
  kExitUnknown = 2,
  kExitError = 3
};

/// args[0] is the program name.
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace powpres
