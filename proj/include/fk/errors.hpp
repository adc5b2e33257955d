#pragma once

#include <stdexcept>
#include <string>

namespace fk {

// Invalid user-facing configuration (bad flags, bad file contents, ...).
struct ConfigError : std::invalid_argument {
    explicit ConfigError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Iterative solver failed to reach its tolerance.
struct SolverError : std::runtime_error {
    SolverError(const std::string& msg, double residual_)
        : std::runtime_error(msg), residual(residual_) {}
    double residual = 0.0;
};

// The restricted eigenproblem has no degrees of freedom; by convention the
// principal eigenvalue of the trivial space is +infinity.
struct TrivialSpaceError : std::runtime_error {
    explicit TrivialSpaceError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fk
