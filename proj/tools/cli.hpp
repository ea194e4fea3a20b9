#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace srank::cli {

enum ExitCode : int {
    kOk = 0,
    kValidation = 1,
    kIo = 2,
    kVerifyFailed = 3,
};

/// Runs the srank command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace srank::cli
