#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace forcelab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured enumeration or size bound was exceeded.
class BoundError : public Error {
 public:
  using Error::Error;
};

// A construction needs a value above the truncated height.
class HeightOverflow : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace forcelab
