#pragma once

#include <stdexcept>
#include <string>

namespace gconv {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A scalar argument is out of its admissible range.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Operands live on different groups or have mismatched shapes.
class IncompatibleOperands : public Error {
 public:
  using Error::Error;
};

/// A structure (network, table, map) violates one of its invariants.
class InvalidStructure : public Error {
 public:
  using Error::Error;
};

/// An operation was called without its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed on-disk document. `where` names the offending location.
class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error(where + ": " + what), where_(where) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

/// A loaded document is well-formed but violates a structural invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace gconv
