#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace corename {

enum class ErrorKind {
  InvalidIdentifier,
  DegenerateResult,
  ParseError,
  UnknownKind,
  RepoError,
  NoData,
  IoError,
  Usage,
};

std::string_view to_string(ErrorKind kind);

/// Base exception for all library failures. The kind drives the CLI exit
/// status and the tag printed in diagnostics.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Malformed input line; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace corename
