#pragma once

#include <stdexcept>
#include <string>

namespace hawkes {

// Base class for all library errors. Subclasses map 1:1 onto the C API
// status codes, so boundary code can classify by type.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad caller input: out-of-range argument, mismatched emotion sets, etc.
class InvalidArgument : public Error {
public:
  explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

// Filesystem problems (missing file, unwritable path).
class IoError : public Error {
public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

// Malformed input data. Carries the 1-based line number when the source
// is a line-delimited file, 0 otherwise.
class ParseError : public Error {
public:
  ParseError(const std::string& msg, long line = 0) : Error(msg), line_(line) {}
  long line() const { return line_; }

private:
  long line_;
};

// Numerical failure: non-finite intermediate, violated internal bound.
class NumericError : public Error {
public:
  explicit NumericError(const std::string& msg) : Error(msg) {}
};

// Simulation exceeded the runaway event threshold.
class SupercriticalError : public Error {
public:
  explicit SupercriticalError(const std::string& msg) : Error(msg) {}
};

}  // namespace hawkes
