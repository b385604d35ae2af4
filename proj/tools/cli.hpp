#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace unimap::cli {

// Runs one command line (without the program name). Exit codes: 0 success,
// 1 certification or verification failure, 2 usage or parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace unimap::cli
