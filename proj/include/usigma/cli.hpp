#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace usigma::cli {

// Dispatches the usigma subcommands (sigma, plot, enum, solve, verify).
// Exit codes: 0 success, 1 verification/IO failure, 2 bad flags or domain
// errors, 3 expression parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace usigma::cli
