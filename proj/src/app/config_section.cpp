#include "config_section.hpp"

#include <cmath>

#include "smiet/errors.hpp"

namespace smiet::app {

ConfigSection::ConfigSection(const nlohmann::json& object, std::string name)
    : object_(object.is_null() ? nlohmann::json::object() : object), name_(std::move(name)) {
  if (!object_.is_object()) throw ConfigError("section '" + name_ + "' must be a JSON object");
}

const nlohmann::json* ConfigSection::find(const std::string& key) {
  seen_.insert(key);
  const auto it = object_.find(key);
  return it == object_.end() ? nullptr : &*it;
}

double ConfigSection::to_quantity(const nlohmann::json& value, const std::string& key, units::Dimension dim) const {
  try {
    double v = 0.0;
    if (value.is_number()) {
      v = value.get<double>();
    } else if (value.is_string()) {
      const auto text = value.get<std::string>();
      if (text == "inf" || text == "infinity") return INFINITY;
      v = units::parse_quantity(text, dim);
    } else {
      throw ConfigError("expected a number or a unit-suffixed string");
    }
    if (!std::isfinite(v)) throw ConfigError("value is not finite");
    return v;
  } catch (const ConfigError& e) {
    throw ConfigError(name_ + "." + key + ": " + e.what());
  }
}

double ConfigSection::quantity(const std::string& key, units::Dimension dim, double fallback) {
  return optional_quantity(key, dim).value_or(fallback);
}

std::optional<double> ConfigSection::optional_quantity(const std::string& key, units::Dimension dim) {
  const auto* value = find(key);
  if (value == nullptr || value->is_null()) return std::nullopt;
  return to_quantity(*value, key, dim);
}

std::vector<double> ConfigSection::quantity_list(const std::string& key, units::Dimension dim,
                                                 std::vector<double> fallback) {
  return optional_quantity_list(key, dim).value_or(std::move(fallback));
}

std::optional<std::vector<double>> ConfigSection::optional_quantity_list(const std::string& key,
                                                                         units::Dimension dim) {
  const auto* value = find(key);
  if (value == nullptr || value->is_null()) return std::nullopt;
  if (!value->is_array()) throw ConfigError(name_ + "." + key + ": expected an array");
  std::vector<double> out;
  for (const auto& item : *value) out.push_back(to_quantity(item, key, dim));
  return out;
}

std::int64_t ConfigSection::integer(const std::string& key, std::int64_t fallback) {
  const auto* value = find(key);
  if (value == nullptr || value->is_null()) return fallback;
  if (value->is_number_integer()) return value->get<std::int64_t>();
  if (value->is_number_float()) {
    const double v = value->get<double>();
    if (v == std::floor(v) && std::abs(v) < 9e15) return static_cast<std::int64_t>(v);
  }
  throw ConfigError(name_ + "." + key + ": expected an integer");
}

bool ConfigSection::boolean(const std::string& key, bool fallback) {
  const auto* value = find(key);
  if (value == nullptr || value->is_null()) return fallback;
  if (!value->is_boolean()) throw ConfigError(name_ + "." + key + ": expected true or false");
  return value->get<bool>();
}

std::string ConfigSection::string(const std::string& key, const std::string& fallback) {
  const auto* value = find(key);
  if (value == nullptr || value->is_null()) return fallback;
  if (!value->is_string()) throw ConfigError(name_ + "." + key + ": expected a string");
  return value->get<std::string>();
}

std::optional<ConfigSection> ConfigSection::subsection(const std::string& key) {
  const auto* value = find(key);
  if (value == nullptr || value->is_null()) return std::nullopt;
  return ConfigSection(*value, name_ + "." + key);
}

void ConfigSection::finish() const {
  for (const auto& [key, value] : object_.items()) {
    if (!seen_.contains(key)) throw ConfigError("unknown key '" + key + "' in section '" + name_ + "'");
  }
}

}  // namespace smiet::app
