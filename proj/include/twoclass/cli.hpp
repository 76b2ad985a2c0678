#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twoclass::cli {

enum exit_code : int {
    ok = 0,
    usage = 1,
    mismatch = 2,
    exhausted = 3,
};

/// Runs one command line (without the program name).  Reports go to out,
/// diagnostics to err.  Never throws.
int run(std::vector<std::string> const & args, std::ostream & out, std::ostream & err);

} // namespace twoclass::cli
