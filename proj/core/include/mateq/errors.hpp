#pragma once

#include <stdexcept>
#include <string>

namespace mateq {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Root iteration budget exhausted. Usually means badly scaled coefficients.
class NonConvergence : public Error {
public:
    using Error::Error;
};

/// Pivot fell below tolerance in a dense solve.
class SingularSystem : public Error {
public:
    using Error::Error;
};

/// Argument outside the supported domain (m out of range, n too small, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A constructed equation did not round-trip to the requested count.
class ValidationFailure : public Error {
public:
    using Error::Error;
};

/// A partition case the construction proves cannot occur.
class UnreachableCase : public Error {
public:
    using Error::Error;
};

/// A solver candidate passed structural checks but failed its residual check.
class InternalInconsistency : public Error {
public:
    using Error::Error;
};

/// Malformed input document.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace mateq
