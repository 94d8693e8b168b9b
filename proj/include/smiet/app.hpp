#pragma once

/**
 * @file app.hpp
 * @brief Experiment drivers behind the `smiet` command-line tool.
 *
 * Each command reads its section of the run configuration, runs the
 * experiment and writes data files into the output directory. Commands are
 * deterministic in (config, seed) for every thread count.
 */

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace smiet::app {

enum class OutputFormat { kCsv, kJson };

struct GlobalOptions {
  std::filesystem::path out_dir = ".";
  std::uint64_t seed = 1;
  unsigned threads = 1;
  OutputFormat format = OutputFormat::kCsv;
  bool gnuplot = false;
};

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;    ///< bad flags, config keys, units or values
inline constexpr int kExitRuntime = 3;  ///< failure while running an experiment

inline constexpr const char* kOutDirEnv = "SMIET_OUT_DIR";

/// Applies the global keys of a parsed config file ("seed", "threads", "out",
/// "format", "gnuplot") and validates that every other top-level key names a
/// known command section. Throws ConfigError.
GlobalOptions apply_global_config(const nlohmann::json& config, GlobalOptions base = {});

OutputFormat parse_format(const std::string& text);

/// The command's section of the config, or an empty object.
nlohmann::json section_of(const nlohmann::json& config, const std::string& command);

// Each returns the paths it wrote.
std::vector<std::filesystem::path> cmd_channel(const nlohmann::json& section, const GlobalOptions& opts);
std::vector<std::filesystem::path> cmd_compare(const nlohmann::json& section, const GlobalOptions& opts);
std::vector<std::filesystem::path> cmd_relay(const nlohmann::json& section, const GlobalOptions& opts);
std::vector<std::filesystem::path> cmd_crowd(const nlohmann::json& section, const GlobalOptions& opts);
std::vector<std::filesystem::path> cmd_shield(const nlohmann::json& section, const GlobalOptions& opts);

/// Runs `command` ("channel", "compare", ...) with its config section.
std::vector<std::filesystem::path> run_command(const std::string& command, const nlohmann::json& config,
                                               const GlobalOptions& opts);

}  // namespace smiet::app
