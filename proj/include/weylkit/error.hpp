#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace weylkit {

enum class ErrorCode {
  // groupoid-core
  MissingComposite,
  BadComposite,
  AssociativityViolation,
  BadInverse,
  DanglingUnit,
  UnknownArrowId,
  NotHomomorphism,
  NotNormal,
  NotBundle,
  TooLarge,
  // phase-cocycle
  UndefinedPair,
  SearchCapExceeded,
  // dual-bundle
  NotAbelian,
  FibreTooLarge,
  // weyl
  RepresentativeDisagreement,
  ElementNotInS,
  BadSection,
  // semidirect
  NotAutomorphism,
  CocycleInvalid,
  RestrictionNotTrivial,
  // reconstruct
  MomentMapMismatch,
  AssumptionUnverified,
  DescentFailure,
  NotInS,
  ThetaInvalid,
  IsoCheckFailed,
  NontrivialCocycle,
  // matrix-algebra
  ConventionMismatch,
  DegenerateSample,
  // cli
  Schema,
  Io,
};

std::string_view error_name(ErrorCode code);

/// Exit-code class of an error: 1 for mathematical failures, 2 for
/// usage/schema/I/O problems.
int error_exit_code(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string witness = {})
      : std::runtime_error(std::string(error_name(code)) + ": " + message),
        code_(code),
        witness_(std::move(witness)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  ErrorCode code_;
  std::string witness_;
};

}  // namespace weylkit
