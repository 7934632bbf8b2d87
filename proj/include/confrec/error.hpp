#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace confrec {

/// Base class for every failure the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. `line` is the physical line in the source, 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what) : Error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace confrec
