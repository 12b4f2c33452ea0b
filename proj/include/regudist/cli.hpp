#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace regudist {

// Command dispatcher behind the regudist executable, separated out so tests
// can drive it in process. `args` is argv without the program name. Returns
// the process exit code: 0 success, 2 bad input (syntax or preconditions),
// 3 verification failure. Global config changes made by a run (--config,
// REGUDIST_TOL) are rolled back before returning.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace regudist
