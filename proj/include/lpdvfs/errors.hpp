#pragma once

#include <stdexcept>
#include <string>

namespace lpdvfs {

/// Base class for all recoverable errors raised by this library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A domain object violates one of its invariants.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// A file or string could not be parsed; message carries field/line context.
class ParseError : public Error {
  public:
    using Error::Error;
};

class UnknownPresetError : public Error {
  public:
    using Error::Error;
};

/// No task deadline lies beyond the requested grid start.
class EmptyHorizonError : public Error {
  public:
    using Error::Error;
};

/// Wrap-around layout input breaks the per-task or total capacity bound.
class CapacityExceededError : public Error {
  public:
    using Error::Error;
};

/// The scheduling problem admits no schedule meeting all deadlines.
class InfeasibleError : public Error {
  public:
    using Error::Error;
};

/// Brute-force enumeration refused: problem beyond its size limits.
class TooLargeError : public Error {
  public:
    using Error::Error;
};

/// LP input rows/columns/bounds are inconsistent.
class DimensionMismatchError : public Error {
  public:
    using Error::Error;
};

} // namespace lpdvfs
