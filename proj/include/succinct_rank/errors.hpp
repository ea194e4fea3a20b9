#pragma once

#include <stdexcept>
#include <string>

namespace srank {

/// Parameters or inputs that violate a documented precondition.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The requested parameters exceed what exact integer arithmetic can hold.
class CapacityError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// Malformed or truncated serialized data, or a failing stream.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace srank
