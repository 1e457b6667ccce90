#pragma once

#include <stdexcept>
#include <string>

namespace ternassert {

/// Caller passed something outside an operation's contract (bad index, size mismatch, ...).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The state vector is numerically unusable (e.g. all branch probabilities vanish).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Request exceeds the dense simulation limits.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ternassert
