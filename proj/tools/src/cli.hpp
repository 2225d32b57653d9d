#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sdwave::cli {

/// Exit-code contract of the tool; nothing else is ever returned.
enum ExitCode : int {
  kPass = 0,
  kGateFailure = 1,
  kConfigError = 2,
  kBlowUp = 3,
};

/// Entry point behind `main`; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sdwave::cli
