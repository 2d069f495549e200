#pragma once

// Every explicit numeric constant used by the bound checkers, in one place.
// Changing a constant here changes both the evaluated bound and the value
// recorded in the report params.

namespace hyperc::constants {

/// rho <= log q / (32 r q) in the restriction-global hypercontractive bound.
inline constexpr double kGlobalHyperMain = 32.0;
/// rho <= log q / (16 r q) in the large-q corollary.
inline constexpr double kGlobalHyperLargeQ = 16.0;
/// Level-d constant for Boolean and general functions.
inline constexpr double kLevelD = 2200.0;
/// Constant in the level-d globalness parameters and the global level bound.
inline constexpr double kLevelGlobal = 33.0;
/// Constant in the q-norm bound for f^{=d}.
inline constexpr double kQNormLevel = 400.0;
/// Level-1 constant for smeared functions.
inline constexpr double kSmearedLevel1 = 750.0;
/// Exponent rate in the density-decrease conclusion mu_p(f) < exp(-0.001 sqrt(m)).
inline constexpr double kDensityDecreaseRate = 0.001;
/// c = 1 / (3200 r) in the cross-intersection measure bound.
inline constexpr double kCrossIntersection = 3200.0;
/// Factor in mu_p(g) < 8 e^{-c/p}.
inline constexpr double kCrossIntersectionFactor = 8.0;
/// mu_p <= 32 exp(-0.0001 / p) for smeared intersecting families.
inline constexpr double kIntersectingFactor = 32.0;
inline constexpr double kIntersectingRate = 0.0001;
/// |A| / k^n <= 128 exp(-0.0001 k / log n) for symmetric vector-intersecting families.
inline constexpr double kVectorFactor = 128.0;
inline constexpr double kVectorRate = 0.0001;
/// |A| / k^n <= 4 mu_{log n / k}(B).
inline constexpr double kCouplingFactor = 4.0;

}  // namespace hyperc::constants
