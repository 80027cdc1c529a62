#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cellscope {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Genotype text could not be parsed. Carries the byte offset of the
/// first offending character.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Malformed input data: CSV rows, report files, corpus files.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Evaluator failure. Importance computation aborts on any of these so
/// partial neighbor means are never produced.
class EvalError : public Error {
 public:
  enum class Kind { miss, transport, disabled_op };

  EvalError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace cellscope
