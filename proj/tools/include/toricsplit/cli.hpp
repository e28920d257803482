#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toricsplit::cli {

enum ExitCode : int { kOk = 0, kDomain = 1, kParse = 2, kResource = 3 };

/// Runs one command; `args` excludes the program name. Library errors are
/// reported on `err` and mapped to the exit codes above.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace toricsplit::cli
