#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pdm::cli {

/// Runs one command line (without the program name). Exit codes: 0 success,
/// 1 not proved / invalid / counterexample, 2 usage or parse error, 3 resource
/// exhaustion. Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pdm::cli
