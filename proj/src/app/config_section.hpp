#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "smiet/units.hpp"

namespace smiet::app {

/// Strict reader over one JSON object: every key must be consumed through a
/// getter before finish(), which rejects leftovers as unknown keys.
class ConfigSection {
 public:
  ConfigSection(const nlohmann::json& object, std::string name);

  double quantity(const std::string& key, units::Dimension dim, double fallback);
  std::optional<double> optional_quantity(const std::string& key, units::Dimension dim);
  std::vector<double> quantity_list(const std::string& key, units::Dimension dim, std::vector<double> fallback);
  std::optional<std::vector<double>> optional_quantity_list(const std::string& key, units::Dimension dim);
  std::int64_t integer(const std::string& key, std::int64_t fallback);
  bool boolean(const std::string& key, bool fallback);
  std::string string(const std::string& key, const std::string& fallback);
  std::optional<ConfigSection> subsection(const std::string& key);

  /// Throws ConfigError naming the first unknown key.
  void finish() const;

  const std::string& name() const { return name_; }

 private:
  const nlohmann::json* find(const std::string& key);
  double to_quantity(const nlohmann::json& value, const std::string& key, units::Dimension dim) const;

  nlohmann::json object_;
  std::string name_;
  std::set<std::string> seen_;
};

}  // namespace smiet::app
