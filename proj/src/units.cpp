#include "smiet/units.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <string>

#include "smiet/errors.hpp"

namespace smiet::units {
namespace {

struct UnitEntry {
  std::string_view symbol;
  Dimension dim;
  double scale;
};

// "u" and "µ" are both accepted for micro; "^2" may be written or omitted.
constexpr std::array<UnitEntry, 44> kUnits{{
    {"m", Dimension::kLength, 1.0},
    {"km", Dimension::kLength, 1e3},
    {"cm", Dimension::kLength, 1e-2},
    {"mm", Dimension::kLength, 1e-3},
    {"um", Dimension::kLength, 1e-6},
    {"µm", Dimension::kLength, 1e-6},
    {"nm", Dimension::kLength, 1e-9},
    {"s", Dimension::kTime, 1.0},
    {"ms", Dimension::kTime, 1e-3},
    {"us", Dimension::kTime, 1e-6},
    {"µs", Dimension::kTime, 1e-6},
    {"min", Dimension::kTime, 60.0},
    {"h", Dimension::kTime, 3600.0},
    {"m^2/s", Dimension::kDiffusivity, 1.0},
    {"m2/s", Dimension::kDiffusivity, 1.0},
    {"cm^2/s", Dimension::kDiffusivity, 1e-4},
    {"cm2/s", Dimension::kDiffusivity, 1e-4},
    {"mm^2/s", Dimension::kDiffusivity, 1e-6},
    {"mm2/s", Dimension::kDiffusivity, 1e-6},
    {"um^2/s", Dimension::kDiffusivity, 1e-12},
    {"um2/s", Dimension::kDiffusivity, 1e-12},
    {"µm^2/s", Dimension::kDiffusivity, 1e-12},
    {"µm2/s", Dimension::kDiffusivity, 1e-12},
    {"J", Dimension::kEnergy, 1.0},
    {"mJ", Dimension::kEnergy, 1e-3},
    {"uJ", Dimension::kEnergy, 1e-6},
    {"nJ", Dimension::kEnergy, 1e-9},
    {"pJ", Dimension::kEnergy, 1e-12},
    {"fJ", Dimension::kEnergy, 1e-15},
    {"aJ", Dimension::kEnergy, 1e-18},
    {"zJ", Dimension::kEnergy, 1e-21},
    {"Hz", Dimension::kFrequency, 1.0},
    {"kHz", Dimension::kFrequency, 1e3},
    {"MHz", Dimension::kFrequency, 1e6},
    {"GHz", Dimension::kFrequency, 1e9},
    {"THz", Dimension::kFrequency, 1e12},
    {"W", Dimension::kPower, 1.0},
    {"mW", Dimension::kPower, 1e-3},
    {"uW", Dimension::kPower, 1e-6},
    {"1/m^2", Dimension::kDensity, 1.0},
    {"1/km^2", Dimension::kDensity, 1e-6},
    {"1/s", Dimension::kRate, 1.0},
    {"1/ms", Dimension::kRate, 1e3},
    {"1/min", Dimension::kRate, 1.0 / 60.0},
}};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view to_string(Dimension dim) {
  switch (dim) {
    case Dimension::kDimensionless: return "dimensionless";
    case Dimension::kLength: return "length";
    case Dimension::kTime: return "time";
    case Dimension::kDiffusivity: return "diffusivity";
    case Dimension::kEnergy: return "energy";
    case Dimension::kFrequency: return "frequency";
    case Dimension::kPower: return "power";
    case Dimension::kDensity: return "density";
    case Dimension::kRate: return "rate";
  }
  return "unknown";
}

double parse_quantity(std::string_view text, Dimension dim) {
  const std::string_view s = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{}) {
    throw ConfigError("cannot parse a number from '" + std::string(text) + "'");
  }
  const std::string_view unit = trim(std::string_view(ptr, static_cast<size_t>(s.data() + s.size() - ptr)));
  if (unit.empty()) return value;
  for (const auto& entry : kUnits) {
    if (entry.symbol != unit) continue;
    if (entry.dim != dim) {
      throw ConfigError("unit '" + std::string(unit) + "' is a " + std::string(to_string(entry.dim)) +
                        " unit, expected " + std::string(to_string(dim)));
    }
    return value * entry.scale;
  }
  throw ConfigError("unknown unit '" + std::string(unit) + "'");
}

}  // namespace smiet::units
