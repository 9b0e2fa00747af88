#pragma once

#include <stdexcept>
#include <string>

namespace bergbox {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or invalid configuration input (bad JSON, non-positive exponent, ...).
struct ConfigError : Error {
    using Error::Error;
};

/// Multi-index length does not match the expected dimension.
struct DimensionError : Error {
    using Error::Error;
};

/// Numeric argument outside the mathematical domain of a function.
struct DomainError : Error {
    using Error::Error;
};

/// Decrement of a multi-index entry that is already zero.
struct BoundaryError : Error {
    using Error::Error;
};

/// An enumeration or construction would exceed the configured work budget.
struct ResourceError : Error {
    using Error::Error;
};

/// A documented precondition was violated by the caller.
struct PreconditionError : Error {
    using Error::Error;
};

} // namespace bergbox
