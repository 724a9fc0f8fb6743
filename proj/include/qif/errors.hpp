#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qif {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// -- distribution construction --------------------------------------------
class SumMismatch : public Error {
 public:
  using Error::Error;
};
class EmptySupport : public Error {
 public:
  using Error::Error;
};

// -- entropy ----------------------------------------------------------------
class UnsupportedOrder : public Error {
 public:
  using Error::Error;
};
class DegenerateDistribution : public Error {
 public:
  using Error::Error;
};

// -- program DSL -------------------------------------------------------------
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, int line, int column)
      : Error(msg + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

class UnknownIdentifier : public Error {
 public:
  using Error::Error;
};
class TypeError : public Error {
 public:
  using Error::Error;
};

/// Runtime evaluation failure; remembers the input value that triggered it.
class EvalError : public Error {
 public:
  EvalError(const std::string& msg, std::uint64_t input)
      : Error(msg + " (input A=" + std::to_string(input) + ")"),
        input_(input) {}
  std::uint64_t input() const noexcept { return input_; }

 private:
  std::uint64_t input_;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

// -- families / schedules ----------------------------------------------------
class DomainError : public Error {
 public:
  using Error::Error;
};
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// -- comparator ---------------------------------------------------------------
class ScheduleMismatch : public Error {
 public:
  using Error::Error;
};
class DegenerateSeries : public Error {
 public:
  using Error::Error;
};

// -- witness -------------------------------------------------------------------
class SearchExhausted : public Error {
 public:
  using Error::Error;
};
class VerificationFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace qif
