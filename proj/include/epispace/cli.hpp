#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace epispace::cli {

// Runs one command. Exit codes: 0 all requested checks satisfied, 1 a check
// violated or a semantic operation failed (witness printed), 2 usage or
// format error, 3 enumeration scale exceeded.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace epispace::cli
