#pragma once

#include <stdexcept>
#include <string>

namespace dfrac {

/// Base class for all library-specific failures.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Gamma-based evaluation requested at a nonpositive integer order.
class PoleError : public Error {
public:
  using Error::Error;
};

/// A certified truncation-tail bound exceeds the requested tolerance.
class WindowTooSmall : public Error {
public:
  using Error::Error;
};

/// An operator needs values outside the window but the function declares
/// no extension (policy Undefined) and no output index survives flagging.
class ExtensionRequired : public Error {
public:
  using Error::Error;
};

/// Input fails the admissibility (weighted tail summability) test for the
/// requested fractional integral.
class NotInDomain : public Error {
public:
  using Error::Error;
};

/// Successive quadrature refinements did not reach the target.
class QuadratureNotConverged : public Error {
public:
  using Error::Error;
};

/// Regularity-case parameters violate the case constraint
/// (e.g. alpha + beta on the wrong side of 1, or too close to it).
class CaseConstraintViolated : public Error {
public:
  using Error::Error;
};

/// Malformed signal file.
class ParseError : public Error {
public:
  using Error::Error;
};

/// Signal file repeats an index.
class DuplicateIndex : public ParseError {
public:
  using ParseError::ParseError;
};

} // namespace dfrac
