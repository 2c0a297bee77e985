#pragma once

#include <stdexcept>
#include <string>

namespace vdw {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

// A theorem's hypotheses do not hold for the requested parameters.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

// Requested evaluation lies outside the regime where the bound is proven.
class RegimeError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace vdw
