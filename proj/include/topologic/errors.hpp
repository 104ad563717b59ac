#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace topologic {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed formula text. `position()` is the byte offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Invalid user input: bad model documents, unknown atoms, unknown points.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain (e.g. interior on a non-topology).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A structural guarantee of the construction failed to hold. Never expected
/// on valid input; indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace topologic
