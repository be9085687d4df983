#pragma once

#include <numbers>

namespace dotcavity {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// SI 2019 exact values.
inline constexpr double kPlanck = 6.62607015e-34;           // J s
inline constexpr double kElementaryCharge = 1.602176634e-19; // C

// Resistance quantum h/e^2, fixed to the CODATA value.
inline constexpr double kResistanceQuantum = 25812.807;  // ohm

// Zeeman splitting per tesla for GaAs conduction electrons.
inline constexpr double kGaAsSpinSplittingPerTesla = 6.2e9;  // Hz / T

}  // namespace dotcavity
