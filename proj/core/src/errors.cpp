#include "qportrait/errors.hpp"

namespace qp {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NotUnitary: return "NotUnitary";
    case Errc::NonZeroTrace: return "NonZeroTrace";
    case Errc::ConvergenceFailure: return "ConvergenceFailure";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InvalidDensity: return "InvalidDensity";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::CoarseProjector: return "CoarseProjector";
    case Errc::InvalidResolution: return "InvalidResolution";
    case Errc::DirectorTooLong: return "DirectorTooLong";
    case Errc::BadDirector: return "BadDirector";
    case Errc::ZeroProbabilityOutcome: return "ZeroProbabilityOutcome";
    case Errc::ZeroProbabilityCondition: return "ZeroProbabilityCondition";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::EmptySubset: return "EmptySubset";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::MissingSetting: return "MissingSetting";
    case Errc::ShotCountZero: return "ShotCountZero";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_validation_error(Errc code) noexcept {
  switch (code) {
    case Errc::ConvergenceFailure:
    case Errc::ZeroProbabilityOutcome:
    case Errc::ZeroProbabilityCondition:
    case Errc::CoarseProjector:
      return false;
    default:
      return true;
  }
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace qp
