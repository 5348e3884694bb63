#pragma once

#include <iosfwd>
#include <string>
#include <vector>

// Command-line front end. run() is the whole program minus main() so tests
// can drive it in-process. Exit codes: 0 success, 1 semantic failure
// (validation, theorem, bad parameters), 2 parse/usage failure.

namespace nilkl::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nilkl::cli
