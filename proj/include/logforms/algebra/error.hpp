#pragma once

#include <stdexcept>
#include <string>

namespace logforms {

/// Machine-readable failure classes. The numeric values are the CLI exit codes.
enum class ErrorCode : int {
  parse = 2,
  precondition = 3,
  non_stabilization = 4,
  invariant = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(ErrorCode::parse, what + " (line " + std::to_string(line) + ", column " +
                                    std::to_string(column) + ")"),
        line_(line),
        column_(column),
        message_(what) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error(ErrorCode::precondition, what) {}
};

class NonStabilizationError : public Error {
 public:
  explicit NonStabilizationError(const std::string& what)
      : Error(ErrorCode::non_stabilization, what) {}
};

class InvariantError : public Error {
 public:
  explicit InvariantError(const std::string& what) : Error(ErrorCode::invariant, what) {}
};

}  // namespace logforms
