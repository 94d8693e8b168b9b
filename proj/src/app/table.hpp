#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "smiet/app.hpp"

namespace smiet::app {

/// Shortest round-trip decimal representation ('.' decimal point, no locale).
std::string format_number(double value);

/// Column-oriented table written as CSV (header row, comma separated, LF) or
/// as JSON ({"columns": [...], "rows": [[...], ...]}).
class Table {
 public:
  explicit Table(std::vector<std::string> columns);

  void add_row(std::vector<double> row);
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }

  std::string to_csv() const;
  nlohmann::json to_json() const;

  /// Writes `<stem>.csv` or `<stem>.json` under dir; returns the path.
  std::filesystem::path write(const std::filesystem::path& dir, const std::string& stem, OutputFormat format) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

std::filesystem::path write_text(const std::filesystem::path& path, const std::string& text);
std::filesystem::path write_json(const std::filesystem::path& path, const nlohmann::json& value);

}  // namespace smiet::app
