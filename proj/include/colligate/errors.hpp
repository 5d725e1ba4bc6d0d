#pragma once

#include <stdexcept>
#include <string>

namespace colligate {

/// Base class for every error raised by the library. The CLI maps any of
/// these to exit status 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes do not agree, or an index is out of range.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Two objects that must share a point set / test table / value space do not.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// A value violates a type invariant (non-finite entry, non-isometric U, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// An operation was called with its stated precondition violated.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class RankError : public Error {
 public:
  using Error::Error;
};

class OrthogonalityError : public Error {
 public:
  using Error::Error;
};

class PaddingError : public Error {
 public:
  using Error::Error;
};

/// I - D*Lambda is numerically singular at some point.
class SingularResolventError : public Error {
 public:
  using Error::Error;
};

}  // namespace colligate
