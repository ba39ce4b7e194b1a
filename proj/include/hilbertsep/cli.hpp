#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hilbertsep::cli {

/// Parses and executes one command line (without the program name), writing
/// to the given streams. Returns the process exit code:
///   0 success
///   1 usage or data errors
///   2 invalid domain
///   3 geometric misuse (exterior point, dimension mismatch, ...)
///   4 not separable
///   5 solver iteration limit
///   6 verification failure
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hilbertsep::cli
