#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace plural {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A ChipSpec / SimConfig field is out of range. field() names it.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// An argument lies outside an operation's mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed task graph: dangling edge endpoint, cycle where a DAG is required,
// duplicate ids.
class GraphError : public Error {
 public:
  using Error::Error;
};

// Simulator configuration does not fit the graph (e.g. unresolved conditional).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Graph has nothing to execute.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// Structured-text input could not be read. line() is 1-based, 0 if unknown.
// what() reads "source:line: message" with absent parts omitted.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message, const std::string& source = {})
      : Error(format(line, message, source)), line_(line), message_(message) {}
  int line() const noexcept { return line_; }
  const std::string& message() const noexcept { return message_; }

 private:
  static std::string format(int line, const std::string& message, const std::string& source) {
    std::string prefix = source;
    if (line > 0) prefix += (prefix.empty() ? "line " : ":") + std::to_string(line);
    return prefix.empty() ? message : prefix + ": " + message;
  }

  int line_;
  std::string message_;
};

// Caller combined inputs that do not belong together.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace plural
