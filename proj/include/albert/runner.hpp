#pragma once

#include <string>
#include <vector>

namespace albert::cli {

// Full command-line entry point; returns the process exit code.
// Contract: 0 = all checks pass, 1 = at least one check failed (the report
// carries a witness), 2 = configuration or usage error.
int run_cli(const std::vector<std::string>& args);

} // namespace albert::cli
