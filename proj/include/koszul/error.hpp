#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace koszul {

enum class ErrorCode {
  invalid_params,
  budget_exceeded,
  degree_overflow,
  invalid_twist,
  mismatched_algebra,
  heart_property_violated,
  io_error,
  parse_error,
  semantic_error,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above; the
/// CLI maps them onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Syntax error with a 1-based position inside the text that was parsed.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(ErrorCode::parse_error, std::to_string(line) + ":" + std::to_string(column) +
                                          ": " + message),
        line_(line),
        column_(column),
        detail_(message) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

}  // namespace koszul
