#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace privcap::cli {

enum ExitCode : int {
    kOk = 0,
    kDomainError = 1,
    kUsageError = 2,
};

/// Entry point of the privcap tool. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace privcap::cli
