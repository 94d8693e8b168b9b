// smiet: command-line front end for the diffusion channel, relay, crowd
// harvesting and shield experiments.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "smiet/app.hpp"
#include "smiet/errors.hpp"

namespace {

nlohmann::json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw smiet::ConfigError("cannot open config file '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw smiet::ConfigError("config file '" + path + "': " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace smiet;

  CLI::App cli{"Molecular communication energy harvesting experiments"};
  cli.require_subcommand(1);
  cli.fallthrough();

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<unsigned> threads;
  std::optional<std::string> format;
  bool gnuplot = false;
  cli.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  cli.add_option("--seed", seed, "master seed (u64)");
  cli.add_option("--out", out_dir, "output directory (overrides $" + std::string(app::kOutDirEnv) + ")");
  cli.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  cli.add_option("--format", format, "table format")->check(CLI::IsMember({"csv", "json"}));
  cli.add_flag("--gnuplot", gnuplot, "also write gnuplot scripts");

  const char* descriptions[][2] = {
      {"channel", "first-passage density and capture fraction curves"},
      {"compare", "received fraction against distance: RF, THz, MCvD"},
      {"relay", "relay harvest histograms with GEV fits"},
      {"crowd", "crowd harvesting over a node-density sweep"},
      {"shield", "knife-edge shield self-interference sweep"},
  };
  for (const auto& d : descriptions) cli.add_subcommand(d[0], d[1]);

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? app::kExitOk : app::kExitUsage;
  }
  const std::string command = cli.get_subcommands().front()->get_name();

  nlohmann::json config = nlohmann::json::object();
  app::GlobalOptions opts;
  try {
    if (!config_path.empty()) config = load_config(config_path);
    opts = app::apply_global_config(config);
    if (const char* env = std::getenv(app::kOutDirEnv); env != nullptr && *env != '\0') opts.out_dir = env;
    if (out_dir) opts.out_dir = *out_dir;
    if (seed) opts.seed = *seed;
    if (threads) opts.threads = *threads;
    if (format) opts.format = app::parse_format(*format);
    if (gnuplot) opts.gnuplot = true;
  } catch (const std::exception& e) {
    std::cerr << "smiet: " << e.what() << '\n';
    return app::kExitUsage;
  }

  try {
    for (const auto& path : app::run_command(command, config, opts)) std::cout << path.string() << '\n';
  } catch (const ConfigError& e) {
    std::cerr << "smiet " << command << ": " << e.what() << '\n';
    return app::kExitUsage;
  } catch (const UnsupportedError& e) {
    std::cerr << "smiet " << command << ": " << e.what() << '\n';
    return app::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "smiet " << command << ": " << e.what() << '\n';
    return app::kExitRuntime;
  }
  return app::kExitOk;
}
