#pragma once

#include <numbers>

namespace casimir
{
    // CODATA 2018, SI.
    inline constexpr double kHbar = 1.054571817e-34;     // J s
    inline constexpr double kBoltzmann = 1.380649e-23;   // J/K
    inline constexpr double kSpeedOfLight = 299792458.0; // m/s
    inline constexpr double kEpsilon0 = 8.8541878128e-12; // F/m

    inline constexpr double kPi = std::numbers::pi;

    /// Riemann zeta(3) (Apery's constant).
    inline constexpr double kZeta3 = 1.2020569031595943;
} // namespace casimir
