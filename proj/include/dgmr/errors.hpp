#pragma once

#include <stdexcept>
#include <string>

namespace dgmr {

/// Thrown when user-facing input (arguments, config keys, files) is invalid.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical procedure cannot deliver its postcondition
/// (singular solve, residual above tolerance, under-resolved reference).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dgmr
