#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace thaumakit::cli {

/// Runs one command. args excludes the program name.
/// Exit codes: 0 success, 1 bad input (state, dimension, flags), 2 solver failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thaumakit::cli
