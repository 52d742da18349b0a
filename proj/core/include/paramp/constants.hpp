#pragma once

#include <numbers>

namespace paramp::constants {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// CODATA 2018 exact / recommended values, SI units.
inline constexpr double kHbar = 1.054571817e-34;       // J s
inline constexpr double kBoltzmann = 1.380649e-23;     // J / K
inline constexpr double kFluxQuantum = 2.067833848e-15;  // Wb, h / 2e

}  // namespace paramp::constants
