#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nilm {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A value lies outside the range allowed for its task or operation.
class RangeError : public Error {
public:
  using Error::Error;
};

/// A payload is in range but violates a task constraint (tied mode,
/// fractional mean, even-length median list, ...). Generators resample.
class ConstraintError : public Error {
public:
  using Error::Error;
};

/// A generator exhausted its rejection budget.
class GenerationError : public Error {
public:
  using Error::Error;
};

/// A symbol string contains a character outside the automaton alphabet.
class AlphabetError : public Error {
public:
  using Error::Error;
};

class ArgumentError : public Error {
public:
  using Error::Error;
};

/// Prediction indices do not line up with the gold split.
class AlignmentError : public Error {
public:
  using Error::Error;
};

/// A sweep is missing (size, run) cells.
class CompletenessError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

/// Malformed record. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

}  // namespace nilm
