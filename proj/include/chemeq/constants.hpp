#pragma once

namespace chemeq {

/// Universal gas constant, J/(mol K).
inline constexpr double kGasConstant = 8.31446261815324;

/// Standard-state pressure of the thermodynamic database, Pa (1 bar).
inline constexpr double kStandardPressure = 100000.0;

/// One standard atmosphere, Pa.
inline constexpr double kAtmosphere = 101325.0;

}  // namespace chemeq
