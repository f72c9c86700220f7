#pragma once

#include <stdexcept>
#include <string>

namespace upkit {

enum class Errc {
  NotPrime,
  CharDividesSix,
  FieldTooLarge,
  MixedFields,
  DivisionByZero,
  RankTooSmall,
  InconsistentLift,
  NotInGroup,
  DimensionMismatch,
  ZeroTorusEntry,
  BadIndices,
  InvalidDescriptor,
  MixedContexts,
  EmptySet,
  StepPostconditionFailed,
  TauNotAutomorphism,
  ResidualNotCentral,
  NotInU12,
  VerificationMismatch,
  MismatchAtCoefficient,
  UnknownLemma,
  BadParams,
  Overflow,
  NonSmoothDenominator,
};

const char* errc_name(Errc e);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace upkit
