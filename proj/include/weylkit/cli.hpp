#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace weylkit {

/// Runs the weylkit command line on `args` (without the program name).
/// Returns 0 on success or PASS, 1 on a mathematical failure, 2 on usage,
/// schema or I/O errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace weylkit
