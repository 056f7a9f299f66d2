#pragma once

#include <stdexcept>
#include <string>

namespace hallcrit {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: ragged tables, ids out of range, shape mismatches,
/// tables that violate the owning type's structural invariants.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive check or enumeration would exceed its configured cap.
class CapError : public Error {
 public:
  using Error::Error;
};

/// No m <= cap with f^m(y) <= x.x was found in a bound verification.
class NoBaseIterate : public Error {
 public:
  using Error::Error;
};

/// A loop that must terminate by construction did not; signals a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace hallcrit
