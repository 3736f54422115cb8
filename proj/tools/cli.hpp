#pragma once

#include <string>
#include <vector>

namespace smx {

struct RunReport;

/// Entry point of the command-line tool, callable in-process by tests.
/// args excludes the program name. Returns the process exit code:
/// 0 success (and validation matched), 2 validation mismatch, 1 usage,
/// I/O, or solver errors.
int cli_main(const std::vector<std::string>& args);
int cli_main(int argc, const char* const* argv);

/// Exit-code policy for a finished solve.
int exit_code_for_validation(const RunReport& report);

}  // namespace smx
