#include "weylkit/error.hpp"

namespace weylkit {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingComposite: return "MissingComposite";
    case ErrorCode::BadComposite: return "BadComposite";
    case ErrorCode::AssociativityViolation: return "AssociativityViolation";
    case ErrorCode::BadInverse: return "BadInverse";
    case ErrorCode::DanglingUnit: return "DanglingUnit";
    case ErrorCode::UnknownArrowId: return "UnknownArrowId";
    case ErrorCode::NotHomomorphism: return "NotHomomorphism";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::NotBundle: return "NotBundle";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::UndefinedPair: return "UndefinedPair";
    case ErrorCode::SearchCapExceeded: return "SearchCapExceeded";
    case ErrorCode::NotAbelian: return "NotAbelian";
    case ErrorCode::FibreTooLarge: return "FibreTooLarge";
    case ErrorCode::RepresentativeDisagreement: return "RepresentativeDisagreement";
    case ErrorCode::ElementNotInS: return "ElementNotInS";
    case ErrorCode::BadSection: return "BadSection";
    case ErrorCode::NotAutomorphism: return "NotAutomorphism";
    case ErrorCode::CocycleInvalid: return "CocycleInvalid";
    case ErrorCode::RestrictionNotTrivial: return "RestrictionNotTrivial";
    case ErrorCode::MomentMapMismatch: return "MomentMapMismatch";
    case ErrorCode::AssumptionUnverified: return "AssumptionUnverified";
    case ErrorCode::DescentFailure: return "DescentFailure";
    case ErrorCode::NotInS: return "NotInS";
    case ErrorCode::ThetaInvalid: return "ThetaInvalid";
    case ErrorCode::IsoCheckFailed: return "IsoCheckFailed";
    case ErrorCode::NontrivialCocycle: return "NontrivialCocycle";
    case ErrorCode::ConventionMismatch: return "ConventionMismatch";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::Schema: return "Schema";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

int error_exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::Schema:
    case ErrorCode::Io:
    case ErrorCode::UnknownArrowId:
    case ErrorCode::TooLarge:
    case ErrorCode::SearchCapExceeded:
    case ErrorCode::FibreTooLarge:
      return 2;
    default:
      return 1;
  }
}

}  // namespace weylkit
