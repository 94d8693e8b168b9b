#pragma once

#include <string_view>

namespace smiet::units {

/// Physical dimension a configuration value is expected to carry.
enum class Dimension {
  kDimensionless,
  kLength,       // m
  kTime,         // s
  kDiffusivity,  // m^2/s
  kEnergy,       // J
  kFrequency,    // Hz
  kPower,        // W
  kDensity,      // 1/m^2
  kRate,         // 1/s
};

std::string_view to_string(Dimension dim);

/// Parses "<number> [unit]" into SI base units, e.g. "1 mm" -> 1e-3,
/// "79.5 um^2/s" -> 7.95e-11, "202.88 zJ" -> 2.0288e-19. A bare number is
/// taken as already SI. Throws ConfigError on an unknown or mismatched unit.
double parse_quantity(std::string_view text, Dimension dim);

// Common conversions, for code and tests.
inline constexpr double kMillimetre = 1e-3;
inline constexpr double kMicrometre = 1e-6;
inline constexpr double kCentimetre = 1e-2;
inline constexpr double kCm2PerSecond = 1e-4;
inline constexpr double kUm2PerSecond = 1e-12;
inline constexpr double kZeptojoule = 1e-21;

}  // namespace smiet::units
