#include "upkit/error.hpp"

namespace upkit {

const char* errc_name(Errc e) {
  switch (e) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::CharDividesSix: return "CharDividesSix";
    case Errc::FieldTooLarge: return "FieldTooLarge";
    case Errc::MixedFields: return "MixedFields";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::RankTooSmall: return "RankTooSmall";
    case Errc::InconsistentLift: return "InconsistentLift";
    case Errc::NotInGroup: return "NotInGroup";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ZeroTorusEntry: return "ZeroTorusEntry";
    case Errc::BadIndices: return "BadIndices";
    case Errc::InvalidDescriptor: return "InvalidDescriptor";
    case Errc::MixedContexts: return "MixedContexts";
    case Errc::EmptySet: return "EmptySet";
    case Errc::StepPostconditionFailed: return "StepPostconditionFailed";
    case Errc::TauNotAutomorphism: return "TauNotAutomorphism";
    case Errc::ResidualNotCentral: return "ResidualNotCentral";
    case Errc::NotInU12: return "NotInU12";
    case Errc::VerificationMismatch: return "VerificationMismatch";
    case Errc::MismatchAtCoefficient: return "MismatchAtCoefficient";
    case Errc::UnknownLemma: return "UnknownLemma";
    case Errc::BadParams: return "BadParams";
    case Errc::Overflow: return "Overflow";
    case Errc::NonSmoothDenominator: return "NonSmoothDenominator";
  }
  return "Unknown";
}

}  // namespace upkit
