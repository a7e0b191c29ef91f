#include "advnet/error.hpp"

namespace advnet {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::CyclicGraph: return "CyclicGraph";
    case Errc::SourceHasInEdges: return "SourceHasInEdges";
    case Errc::TerminalHasOutEdges: return "TerminalHasOutEdges";
    case Errc::UnreachableTerminal: return "UnreachableTerminal";
    case Errc::DanglingIntermediate: return "DanglingIntermediate";
    case Errc::EmptyTerminalSet: return "EmptyTerminalSet";
    case Errc::UnknownVertex: return "UnknownVertex";
    case Errc::Unreachable: return "Unreachable";
    case Errc::NotATerminal: return "NotATerminal";
    case Errc::TooManyVertices: return "TooManyVertices";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::WordOutsideDomain: return "WordOutsideDomain";
    case Errc::DomainTooLarge: return "DomainTooLarge";
    case Errc::SpaceMismatch: return "SpaceMismatch";
    case Errc::NotPrimePower: return "NotPrimePower";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::DecodeFailure: return "DecodeFailure";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::ErrorOutsideVulnerableSet: return "ErrorOutsideVulnerableSet";
    case Errc::NotPreceding: return "NotPreceding";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::ParameterOutOfRange: return "ParameterOutOfRange";
    case Errc::FieldTooSmall: return "FieldTooSmall";
    case Errc::NotTwoLevel: return "NotTwoLevel";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::UnknownFamily: return "UnknownFamily";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::NotSimple3Level: return "NotSimple3Level";
    case Errc::InvalidCutPair: return "InvalidCutPair";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

FieldTooSmallError::FieldTooSmallError(unsigned q, unsigned suggested_minimum)
    : Error(Errc::FieldTooSmall, "alphabet size " + std::to_string(q) +
                                     " too small; need q >= " + std::to_string(suggested_minimum)),
      suggested_minimum_(suggested_minimum) {}

}  // namespace advnet
