#pragma once

#include <stdexcept>
#include <string>

namespace fuzzydet {

enum class ErrorCode {
  LatticeMismatch,
  DimensionMismatch,
  AlphabetMismatch,
  UnknownSymbol,
  InvalidValue,
  InvalidCap,
  PsiNotReflexive,
  PsiNotLeftInvariant,
  Parse,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Syntax or validation error in an automaton document. `line` and `column`
/// are 1-based; a column of 0 means the whole line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

}  // namespace fuzzydet
