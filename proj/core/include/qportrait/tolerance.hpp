#pragma once

namespace qp::tol {

// Base values. Every accessor below multiplies by scale().
inline constexpr double kHermitian = 1e-10;
inline constexpr double kUnitary = 1e-10;
inline constexpr double kReassembly = 1e-10;
inline constexpr double kTrace = 1e-12;
inline constexpr double kDensityTrace = 1e-10;
inline constexpr double kNegativeEigen = 1e-10;
inline constexpr double kRankRelative = 1e-9;
inline constexpr double kGeneratorTrace = 1e-9;
inline constexpr double kProjectorProduct = 1e-9;
inline constexpr double kProbabilityClamp = 1e-12;
inline constexpr double kNormalization = 1e-9;
inline constexpr double kUnitNorm = 1e-12;
inline constexpr double kZeroOutcome = 1e-15;
inline constexpr double kZeroCondition = 1e-12;
inline constexpr double kCommute = 1e-9;
inline constexpr double kPhase = 1e-9;
inline constexpr double kRankAbsolute = 1e-12;

/// Multiplier read once from QP_TOLERANCE_SCALE (default 1).
double scale() noexcept;

inline double hermitian() { return kHermitian * scale(); }
inline double unitary() { return kUnitary * scale(); }
inline double trace() { return kTrace * scale(); }
inline double density_trace() { return kDensityTrace * scale(); }
inline double negative_eigen() { return kNegativeEigen * scale(); }
inline double rank_relative() { return kRankRelative * scale(); }
inline double generator_trace() { return kGeneratorTrace * scale(); }
inline double projector_product() { return kProjectorProduct * scale(); }
inline double probability_clamp() { return kProbabilityClamp * scale(); }
inline double normalization() { return kNormalization * scale(); }
inline double unit_norm() { return kUnitNorm * scale(); }
inline double zero_outcome() { return kZeroOutcome * scale(); }
inline double zero_condition() { return kZeroCondition * scale(); }
inline double commute() { return kCommute * scale(); }
inline double phase() { return kPhase * scale(); }
inline double rank_absolute() { return kRankAbsolute * scale(); }

}  // namespace qp::tol
