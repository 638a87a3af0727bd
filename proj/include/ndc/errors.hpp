#pragma once

#include <stdexcept>
#include <string>

namespace ndc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller violated an operation's precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An ordinal or index outside a finite block.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Inputs that contradict each other (overlapping blocks, broken generator contracts).
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// An iterative kernel failed to converge.
class NumericFailure : public Error {
public:
    using Error::Error;
};

}  // namespace ndc
