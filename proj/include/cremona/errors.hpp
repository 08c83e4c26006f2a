#pragma once

#include <stdexcept>
#include <string>

namespace cremona {

/// Error categories; the CLI maps each one to a distinct exit status.
enum class ErrorKind {
  kInvalidInput,
  kParse,
  kUnsupportedFieldExtension,
  kResourceLimit,
  kUndetermined,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what)
      : Error(ErrorKind::kInvalidInput, what) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(ErrorKind::kParse, "parse error at " + std::to_string(line) +
                                     ":" + std::to_string(column) + ": " +
                                     what),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// A required point or root is not defined over the rationals.
class UnsupportedFieldExtension : public Error {
 public:
  explicit UnsupportedFieldExtension(const std::string& what)
      : Error(ErrorKind::kUnsupportedFieldExtension,
              "UNSUPPORTED_FIELD_EXTENSION: " + what) {}
};

/// The configured reduction budget of the Groebner engine ran out.
class ResourceLimit : public Error {
 public:
  explicit ResourceLimit(const std::string& what)
      : Error(ErrorKind::kResourceLimit, "resource limit exceeded: " + what) {}
};

class Undetermined : public Error {
 public:
  explicit Undetermined(const std::string& what)
      : Error(ErrorKind::kUndetermined, "UNDETERMINED: " + what) {}
};

}  // namespace cremona
