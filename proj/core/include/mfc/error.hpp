#pragma once

#include <stdexcept>
#include <string>

namespace mfc {

/// Failure classes. The CLI maps each class onto its exit status.
enum class ErrorKind {
  parse = 2,
  precondition = 3,
  certificate = 4,
  solver_bound = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0)
      : Error(ErrorKind::parse, format(what, line, column)), line_(line), column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, int line, int column) {
    if (line <= 0) return what;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
  }
  int line_;
  int column_;
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error(ErrorKind::precondition, what) {}
};

class CertificateError : public Error {
 public:
  explicit CertificateError(const std::string& what) : Error(ErrorKind::certificate, what) {}
};

class SolverBoundError : public Error {
 public:
  explicit SolverBoundError(const std::string& what) : Error(ErrorKind::solver_bound, what) {}
};

}  // namespace mfc
