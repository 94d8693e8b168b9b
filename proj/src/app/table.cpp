#include "table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "smiet/errors.hpp"

namespace smiet::app {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void Table::add_row(std::vector<double> row) {
  if (row.size() != columns_.size()) throw std::logic_error("table row width does not match the header");
  rows_.push_back(std::move(row));
}

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (c > 0) out += ',';
    out += columns_[c];
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += ',';
      out += format_number(row[c]);
    }
    out += '\n';
  }
  return out;
}

nlohmann::json Table::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : rows_) {
    nlohmann::json r = nlohmann::json::array();
    for (double v : row) {
      if (std::isfinite(v)) {
        r.push_back(v);
      } else {
        r.push_back(nullptr);
      }
    }
    rows.push_back(std::move(r));
  }
  return {{"columns", columns_}, {"rows", std::move(rows)}};
}

std::filesystem::path Table::write(const std::filesystem::path& dir, const std::string& stem,
                                   OutputFormat format) const {
  if (format == OutputFormat::kJson) return write_json(dir / (stem + ".json"), to_json());
  return write_text(dir / (stem + ".csv"), to_csv());
}

std::filesystem::path write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
  return path;
}

std::filesystem::path write_json(const std::filesystem::path& path, const nlohmann::json& value) {
  return write_text(path, value.dump(2) + "\n");
}

}  // namespace smiet::app
