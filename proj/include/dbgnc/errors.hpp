#pragma once

#include <stdexcept>
#include <string>

namespace dbgnc {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A point that does not satisfy y^2 = x^3 + 1 over GF(pp).
struct OffCurveError : Error {
    using Error::Error;
};

// Invalid argument to a key-generation or protocol operation.
struct ParameterError : Error {
    using Error::Error;
};

// A randomized search exceeded its retry bound.
struct RetryExhaustedError : Error {
    using Error::Error;
};

// Interval too wide for the requested discrete-log method.
struct RangeTooLargeError : Error {
    using Error::Error;
};

// A zero-knowledge step landed on the identity or a zero coordinate.
struct DegeneratePointError : Error {
    using Error::Error;
};

// Fewer valid decryption shares than the threshold requires.
struct InsufficientSharesError : Error {
    using Error::Error;
};

// A combining or share-decryption log had no solution in range.
struct NotFoundError : Error {
    using Error::Error;
};

// Malformed key/share file content.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace dbgnc
