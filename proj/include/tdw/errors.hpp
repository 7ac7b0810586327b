#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tdw {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: malformed expressions, ring mismatches, violated
/// preconditions. The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// An arithmetic inconsistency inside the engine (e.g. exact and modular
/// ranks disagree for two primes). Never caused by user input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace tdw
