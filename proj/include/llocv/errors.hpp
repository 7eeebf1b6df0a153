#pragma once

#include <stdexcept>
#include <string>

namespace llocv {

// Exit codes used by the CLI; library errors map onto them 1:1.
enum ExitCode : int {
    exit_ok = 0,
    exit_config_error = 2,
    exit_numeric_error = 3,
    exit_not_found = 4,
};

/// Invalid parameter value or malformed configuration.
class ParamError : public std::runtime_error {
public:
    explicit ParamError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure (non-convergence, unphysical covariance matrix, ...).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what, double last = 0.0)
        : std::runtime_error(what), last_iterate(last) {}
    double last_iterate;
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace llocv
