#include "hinv/errors.hpp"

namespace hinv {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidModulus: return "InvalidModulus";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::NonSplitCharPoly: return "NonSplitCharPoly";
    case ErrorCode::NotNilpotent: return "NotNilpotent";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::NotGeneratorTuple: return "NotGeneratorTuple";
    case ErrorCode::NotADecomposition: return "NotADecomposition";
    case ErrorCode::ComponentSplitFailed: return "ComponentSplitFailed";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::WrongField: return "WrongField";
  }
  return "Unknown";
}

}  // namespace hinv
