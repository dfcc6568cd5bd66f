#pragma once

#include <stdexcept>
#include <string>

namespace zetalab {

/// Base class for every error raised by the library.
class ZetaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation requested at a pole of the function.
class PoleError : public ZetaError {
public:
    using ZetaError::ZetaError;
};

/// A parameter violates the domain rules of a function or handle.
class DomainError : public ZetaError {
public:
    using ZetaError::ZetaError;
};

/// The point lies outside the window where the accuracy contract holds.
class AccuracyError : public ZetaError {
public:
    using ZetaError::ZetaError;
};

class OverflowError : public ZetaError {
public:
    using ZetaError::ZetaError;
};

class NonPrimitiveError : public ZetaError {
public:
    using ZetaError::ZetaError;
};

class NotFundamentalError : public ZetaError {
public:
    using ZetaError::ZetaError;
};

/// The operation has no cataloged answer for this handle.
class UnsupportedError : public ZetaError {
public:
    using ZetaError::ZetaError;
};

/// A zero sits on (or too close to) a counting contour.
class BoundaryZeroError : public ZetaError {
public:
    using ZetaError::ZetaError;
};

class PoleOnBoundaryError : public ZetaError {
public:
    using ZetaError::ZetaError;
};

class ConvergenceError : public ZetaError {
public:
    using ZetaError::ZetaError;
};

}  // namespace zetalab
