#include "lcert/util/error.hpp"

namespace lcert {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::Empty: return "Empty";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ModeOutOfRange: return "ModeOutOfRange";
    case ErrorCode::UncertaintyOutOfSet: return "UncertaintyOutOfSet";
    case ErrorCode::NegativeLoad: return "NegativeLoad";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::AllPartsEroded: return "AllPartsEroded";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::NoCertifiedMode: return "NoCertifiedMode";
    case ErrorCode::ConstraintViolation: return "ConstraintViolation";
    case ErrorCode::TooFewInsidePoints: return "TooFewInsidePoints";
    case ErrorCode::Precondition: return "Precondition";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::MissingArtifact: return "MissingArtifact";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace lcert
