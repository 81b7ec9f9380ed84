#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace mftk::cli {

// Runs one command line (args[0] is the program name). Returns the process
// exit code: 0 success, 1 input/usage error, 2 numerical or degenerate failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "LO:HI:STEP" or "q1,q2,...".
std::vector<double> parse_q_grid(const std::string& text);

// "log:LO:HI:COUNT", "dyadic:LO:HI", "s1,s2,..." or "" (library default).
std::vector<std::size_t> parse_scales(const std::string& text);

}  // namespace mftk::cli
