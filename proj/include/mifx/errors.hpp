#pragma once

#include <stdexcept>
#include <string>

namespace mifx {

// Data-level failures: unparsable files, bad labels, infeasible folds.
// Mapped to exit code 2 by the CLI.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numeric failures (non-finite intermediate results, failed decompositions).
// Mapped to exit code 3 by the CLI.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace mifx
