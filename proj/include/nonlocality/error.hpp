#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nonlocality {

// Base for every error raised by the library. Callers that only care about
// "bad input" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. `line` is 1-based; 0 means "end of input".
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// An X-type and a Z-type check overlap on an odd number of qubits.
class CommutationError : public Error {
 public:
  CommutationError(std::size_t x_row, std::size_t z_row)
      : Error("checks do not commute: x-row " + std::to_string(x_row) +
              " and z-row " + std::to_string(z_row)),
        x_row_(x_row),
        z_row_(z_row) {}

  std::size_t x_row() const noexcept { return x_row_; }
  std::size_t z_row() const noexcept { return z_row_; }

 private:
  std::size_t x_row_;
  std::size_t z_row_;
};

}  // namespace nonlocality
