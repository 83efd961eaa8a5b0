#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qcst {

enum class ErrorCode {
  // jet
  DivisionByZeroJet,
  DomainErrorJet,
  OrderOverflow,
  IndexOutOfRange,
  // expr
  UnexpectedCharacter,
  UnexpectedToken,
  UnbalancedParenthesis,
  UnknownFunction,
  UnboundName,
  NonIntegerExponent,
  // metric
  ParseError,
  MissingComponent,
  DuplicateKey,
  UnknownCoordinate,
  UnknownBuiltin,
  BadParameter,
  SingularMetric,
  SignatureError,
  // qc / fluid / frg / diagnostics
  NonDiagonalizableRicci,
  NonPositiveKappa,
  NotUnitTimelike,
  MissingGeneratorField,
  BadTermCount,
  DomainError,
  EmptyGrid,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library. Parser errors carry a byte offset
// into the source text; the metric loader additionally resolves it to a
// 1-based line/column.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message,
        std::optional<std::size_t> offset = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  std::optional<std::size_t> offset() const noexcept { return offset_; }
  std::optional<std::size_t> line() const noexcept { return line_; }
  std::optional<std::size_t> column() const noexcept { return column_; }

  // Returns a copy positioned at the given 1-based line and column.
  Error at(std::size_t line, std::size_t column) const;
  // Returns a copy carrying `offset` unless one is already set.
  Error with_offset(std::size_t offset) const;

 private:
  static std::string format(ErrorCode code, const std::string& message,
                            std::optional<std::size_t> line,
                            std::optional<std::size_t> column);

  ErrorCode code_;
  std::string detail_;
  std::optional<std::size_t> offset_;
  std::optional<std::size_t> line_;
  std::optional<std::size_t> column_;
};

}  // namespace qcst
