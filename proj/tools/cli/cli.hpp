#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mulgeo::cli {

/// Runs one command. args excludes the program name. Returns the exit code:
/// 0 success or pass, 1 verification failure or numerical error, 2 usage or
/// parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mulgeo::cli
