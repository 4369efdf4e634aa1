#pragma once

#include <stdexcept>
#include <string>

namespace aca {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two operands with different array sizes.
class SizeMismatch : public Error {
public:
    using Error::Error;
};

// The operation is only defined for N = 2^n.
class UnsupportedSize : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

// A guaranteed property did not hold; indicates a defect in an engine backend.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

// Malformed textual input (configuration literals, scenario files).
class FormatError : public Error {
public:
    using Error::Error;
};

} // namespace aca
