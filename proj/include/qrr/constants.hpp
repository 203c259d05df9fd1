#pragma once

#include <cstddef>

namespace qrr {

// Operators above this dimension are refused on density-operator paths so
// desk-scale runs stay under a minute.  Overridable per call site.
inline constexpr std::size_t kDimBudget = 4096;

// Singular values below kRankTolFactor * sigma_max count as zero.
inline constexpr double kRankTolFactor = 1e-10;

// Safety factor for the parallel-simulation step count
// n = ceil(safety * M_A^2 t^2 / eps).  Calibrated once on the reference
// family (random Hermitian lists, N=2..4, Q=1..3; observed error constant
// 0.64); the hamsim tests re-run the calibration and check this stored
// value still dominates it.
inline constexpr double kStepSafety = 2.5;

// Constant for the P_w >= c / (kappa'^2 kappa^2) scale check.  Unit constant,
// confirmed by one-time calibration on the reference instance family
// (random 4x3, K=2..4, window alphas: min observed P_w kappa'^2 kappa^2 = 1.8).
inline constexpr double kPwOmegaConstant = 1.0;

// Controlled rotations use C = kRotationHeadroom / max_h so C*h stays below 1.
inline constexpr double kRotationHeadroom = 0.99;

// Default alpha window [ (N+M)^2 / (kAlphaWindowLow * kappa^2),
//                        (N+M)^2 / kAlphaWindowHigh ].
inline constexpr double kAlphaWindowLow = 10.0;
inline constexpr double kAlphaWindowHigh = 2.0;

}  // namespace qrr
