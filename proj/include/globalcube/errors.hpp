#pragma once

#include <stdexcept>
#include <string>

namespace globalcube {

// Base class for every error the toolkit raises deliberately.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Inputs that disagree about their shape (dimension mismatch, out-of-range
// coordinates, malformed permutations).
class StructuralError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// q >= p handed to an operator that only exists for q < p.
class OrderingError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Exact-mode sizes beyond what exhaustive enumeration can handle.
class ResourceGuardError : public Error {
 public:
  using Error::Error;
};

// Malformed input files.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Files that cannot be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace globalcube
