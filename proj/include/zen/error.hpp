#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zen {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input document. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Invalid parameters or inconsistent inputs (simplex violation, shape
// mismatch, too few class members for a split, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Numerical failure during a computation (divergence, non-finite values).
class ComputationError : public Error {
 public:
  using Error::Error;
};

// A dense oracle refused to materialize an instance above its size guard.
class GuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace zen
