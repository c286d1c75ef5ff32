#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nie {

/// Runs the command-line front end on already-split arguments (no program
/// name). Reports go to `out`, errors to `err`. Returns the process exit
/// status: 0 success, 1 domain error or failed verification, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace nie
