#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qp {

/// Failure kinds raised by the library. Each maps to a CLI exit class.
enum class Errc {
  NotHermitian,
  NotUnitary,
  NonZeroTrace,
  ConvergenceFailure,
  DimensionMismatch,
  InvalidDensity,
  NotNormalized,
  CoarseProjector,
  InvalidResolution,
  DirectorTooLong,
  BadDirector,
  ZeroProbabilityOutcome,
  ZeroProbabilityCondition,
  IndexOutOfRange,
  EmptySubset,
  LengthMismatch,
  MissingSetting,
  ShotCountZero,
  ParseError,
  InvalidArgument,
};

std::string_view errc_name(Errc code) noexcept;

/// True for input/validation problems (CLI exit code 2); false for
/// numerical-precondition failures (exit code 3).
bool is_validation_error(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& what);

}  // namespace qp
