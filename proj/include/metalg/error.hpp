#pragma once

#include <stdexcept>
#include <string>

namespace metalg {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input has the wrong shape, an out-of-range entry, or fails a stated precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Mixed arithmetic between incompatible fields.
class FieldMismatch : public Error {
public:
    using Error::Error;
};

/// An internal cross-check failed. Indicates a bug or an unsupported input, never a
/// mathematical negative result.
class InternalCheckFailed : public Error {
public:
    using Error::Error;
};

} // namespace metalg
