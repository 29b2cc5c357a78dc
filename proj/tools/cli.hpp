#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tdma::cli {

enum ExitCode : int {
    kOk = 0,
    kInputError = 1,
    kAlgorithmFailure = 2,
    kValidationFailed = 3,
    kOracleLimit = 4,
};

/// Runs one `tdmasched` invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tdma::cli
