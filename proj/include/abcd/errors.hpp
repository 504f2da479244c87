#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace abcd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside its admissible range.
class RangeError : public Error {
 public:
  RangeError(std::string field, const std::string& what)
      : Error("invalid " + field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Malformed text input. `line` is 1-based; 0 means the problem is not tied to one line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class ParityError : public Error {
 public:
  using Error::Error;
};

class NotSimpleError : public Error {
 public:
  NotSimpleError(std::size_t remaining)
      : Error(std::to_string(remaining) + " loops/multi-edges remain after edge switching"),
        remaining_(remaining) {}
  std::size_t remaining() const noexcept { return remaining_; }

 private:
  std::size_t remaining_;
};

class NotConnectedError : public Error {
 public:
  using Error::Error;
};

class EmptyGraphError : public Error {
 public:
  EmptyGraphError() : Error("graph has no edges") {}
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace abcd
