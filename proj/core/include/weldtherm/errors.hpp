#pragma once

#include <stdexcept>
#include <string>

namespace weldtherm {

/// Invalid physical parameters or out-of-domain arguments.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical failure inside a solver (divergence, singular pivot, model breakdown).
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Configuration document error; carries the offending line when known.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg, int line = 0)
        : std::runtime_error(msg), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace weldtherm
