#pragma once

#include <stdexcept>
#include <string>

namespace schemaind {

// Bad user input or configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax error in one of the text formats; carries a 1-based position.
class ParseError : public ConfigError {
 public:
  ParseError(const std::string& message, int line, int column)
      : ConfigError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Data violating a schema constraint or an operation's precondition on data (exit code 3).
class ConstraintViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Broken internal guarantee (e.g. the chase round guard).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace schemaind
