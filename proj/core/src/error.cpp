#include "qcst/error.hpp"

#include <utility>

namespace qcst {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZeroJet: return "DivisionByZeroJet";
    case ErrorCode::DomainErrorJet: return "DomainErrorJet";
    case ErrorCode::OrderOverflow: return "OrderOverflow";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::UnexpectedCharacter: return "UnexpectedCharacter";
    case ErrorCode::UnexpectedToken: return "UnexpectedToken";
    case ErrorCode::UnbalancedParenthesis: return "UnbalancedParenthesis";
    case ErrorCode::UnknownFunction: return "UnknownFunction";
    case ErrorCode::UnboundName: return "UnboundName";
    case ErrorCode::NonIntegerExponent: return "NonIntegerExponent";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::MissingComponent: return "MissingComponent";
    case ErrorCode::DuplicateKey: return "DuplicateKey";
    case ErrorCode::UnknownCoordinate: return "UnknownCoordinate";
    case ErrorCode::UnknownBuiltin: return "UnknownBuiltin";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::SingularMetric: return "SingularMetric";
    case ErrorCode::SignatureError: return "SignatureError";
    case ErrorCode::NonDiagonalizableRicci: return "NonDiagonalizableRicci";
    case ErrorCode::NonPositiveKappa: return "NonPositiveKappa";
    case ErrorCode::NotUnitTimelike: return "NotUnitTimelike";
    case ErrorCode::MissingGeneratorField: return "MissingGeneratorField";
    case ErrorCode::BadTermCount: return "BadTermCount";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
  }
  return "UnknownError";
}

Error::Error(ErrorCode code, std::string message,
             std::optional<std::size_t> offset)
    : std::runtime_error(format(code, message, std::nullopt, std::nullopt)),
      code_(code),
      detail_(std::move(message)),
      offset_(offset) {}

std::string Error::format(ErrorCode code, const std::string& message,
                          std::optional<std::size_t> line,
                          std::optional<std::size_t> column) {
  std::string out(to_string(code));
  if (line && column) {
    out += " at " + std::to_string(*line) + ":" + std::to_string(*column);
  }
  if (!message.empty()) {
    out += ": " + message;
  }
  return out;
}

Error Error::at(std::size_t line, std::size_t column) const {
  Error copy(code_, detail_, offset_);
  static_cast<std::runtime_error&>(copy) =
      std::runtime_error(format(code_, detail_, line, column));
  copy.line_ = line;
  copy.column_ = column;
  return copy;
}

Error Error::with_offset(std::size_t offset) const {
  if (offset_) return *this;
  Error copy(code_, detail_, offset);
  copy.line_ = line_;
  copy.column_ = column_;
  return copy;
}

}  // namespace qcst
