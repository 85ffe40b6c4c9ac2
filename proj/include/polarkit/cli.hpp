#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace polarkit {

/// Raised when a validity guard blocks a computation (exit code 3), e.g.
/// the tree upper bound on a non-BEC channel without --unsafe.
class GuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Entry point behind the `polarkit` binary. Returns the process exit code:
/// 0 success, 2 usage error, 3 numeric guard tripped.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, const char* const* argv);

}  // namespace polarkit
