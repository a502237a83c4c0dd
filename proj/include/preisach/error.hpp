#pragma once

#include <stdexcept>
#include <string>

namespace preisach {

/// Raised when an argument or a signal violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed CSV or JSON input.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Quadrature that fails to reach its tolerance, or a root bracket that cannot be found.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double achieved = 0.0)
        : std::runtime_error(what), achieved_(achieved) {}

    /// Error estimate (or residual) reached before giving up.
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

} // namespace preisach
