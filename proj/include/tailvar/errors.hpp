#pragma once

#include <stdexcept>
#include <string>

namespace tailvar {

/// Data-driven estimation failure (optimizer non-convergence, degenerate
/// tail regression, non-stationary fit, ...). Distinct from
/// std::invalid_argument, which marks caller/precondition errors; the CLI
/// maps the two to different exit codes.
struct EstimationError : std::runtime_error {
    explicit EstimationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tailvar
