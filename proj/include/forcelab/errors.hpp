#pragma once

#include <stdexcept>
#include <string>

namespace forcelab {

// Violated precondition or malformed input. The CLI maps these to exit code 1.
class DomainError : public std::runtime_error {
public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Parse failure with a 1-based source position.
class SyntaxError : public DomainError {
public:
  SyntaxError(const std::string& what, int line, int column)
      : DomainError(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

}  // namespace forcelab
