#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace trigbeta {

/// Run the command-line front end. Exit codes: 0 success, 1 usage or domain
/// error, 2 verification disagreement, 3 no closed form (eval only).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trigbeta
