// Acceptance suite: one PASS/FAIL line per criterion, each with its runtime
// budget. Exits non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "smiet/app.hpp"
#include "smiet/channel.hpp"
#include "smiet/gev.hpp"
#include "smiet/particle_sim.hpp"
#include "smiet/relay.hpp"

#ifndef SMIET_CLI_PATH
#error "SMIET_CLI_PATH must name the smiet executable"
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using namespace smiet;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), f, a);
  return buf;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("smiet_acceptance_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::size_t col(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw std::runtime_error("missing column " + name);
    return static_cast<std::size_t>(it - header.begin());
  }
};

Csv read_csv(const fs::path& p) {
  Csv out;
  std::istringstream in(slurp(p));
  std::string line;
  std::getline(in, line);
  std::istringstream hs(line);
  for (std::string cell; std::getline(hs, cell, ',');) out.header.push_back(cell);
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream rs(line);
    for (std::string cell; std::getline(rs, cell, ',');) row.push_back(std::stod(cell));
    out.rows.push_back(row);
  }
  return out;
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double mx = oracle::sample_mean(x);
  const double my = oracle::sample_mean(y);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  return num / den;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// GEV CDF written out independently of the library.
double gev_cdf_ref(double mu, double sigma, double zeta, double x) {
  const double z = (x - mu) / sigma;
  if (std::abs(zeta) < 1e-12) return std::exp(-std::exp(-z));
  const double s = 1.0 + zeta * z;
  if (s <= 0.0) return zeta > 0.0 ? 0.0 : 1.0;
  return std::exp(-std::pow(s, -1.0 / zeta));
}

// ---------------------------------------------------------------------------

Outcome quadrature_identity() {
  std::mt19937_64 gen(20240601);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const channel::LinkGeometry g{std::pow(10.0, -6 + 4 * u(gen)), std::pow(10.0, -7 + 5 * u(gen))};
    const channel::DiffusionMedium m{std::pow(10.0, -12 + 4 * u(gen)), 0.0};
    const double T = std::pow(10.0, -1 + 3 * u(gen)) * g.d * g.d / m.D;
    const double mode = g.d * g.d / (6 * m.D);
    const double q = oracle::integrate([&](double t) { return channel::first_passage_density(g, m, t); }, 0.0, T,
                                       {mode, 0.2 * mode, 5 * mode});
    const double f = channel::capture_fraction(g, m, T);
    worst = std::max(worst, std::abs(q - f) / f);
  }
  return {worst <= 1e-6, fmt("max relative error %.2e over 20 configurations (tol 1e-6)", worst)};
}

sim::SimConfig reference_sim(std::uint64_t seed, sim::AbsorptionTest test) {
  sim::SimConfig cfg;
  cfg.geometry = {10e-6, 5e-6};
  cfg.medium = {100e-12, 0.0};
  cfg.horizon = 10 * cfg.geometry.d * cfg.geometry.d / cfg.medium.D;
  cfg.dt = (cfg.geometry.R / 4) * (cfg.geometry.R / 4) / (2 * cfg.medium.D);
  cfg.n_particles = 100000;
  cfg.master_seed = seed;
  cfg.absorption = test;
  return cfg;
}

Outcome mc_equivalence() {
  int pass = 0;
  std::string zs;
  double fc = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto cfg = reference_sim(seed, sim::AbsorptionTest::kBrownianBridge);
    fc = channel::capture_fraction(cfg.geometry, cfg.medium, cfg.horizon);
    const auto est = sim::empirical_capture_fraction(cfg);
    const double se = oracle::binomial_se(fc, static_cast<double>(cfg.n_particles));
    const double z = (est.value - fc) / se;
    if (std::abs(z) <= 3.0) ++pass;
    zs += fmt(" %+.2f", z);
  }
  return {pass >= 9, std::to_string(pass) + "/10 seeds within 3 SE of F_c = " + fmt("%.5f", fc) +
                         " (bridge absorption test); z =" + zs};
}

Outcome dt_convergence() {
  auto cfg = reference_sim(3, sim::AbsorptionTest::kPointInSphere);
  const double fc = channel::capture_fraction(cfg.geometry, cfg.medium, cfg.horizon);
  std::vector<double> gaps;
  std::string detail = "point-in-sphere |empirical - F_c| at dt/1,2,4,8:";
  for (int halvings = 0; halvings <= 3; ++halvings) {
    const auto est = sim::empirical_capture_fraction(cfg);
    gaps.push_back(std::abs(est.value - fc));
    detail += fmt(" %.4f", gaps.back());
    cfg.dt /= 2;
  }
  bool monotone = true;
  for (std::size_t i = 1; i < gaps.size(); ++i) monotone = monotone && gaps[i] < gaps[i - 1];
  return {monotone, detail};
}

Outcome distance_slopes() {
  const auto dir = scratch("compare");
  app::GlobalOptions opts;
  opts.out_dir = dir;
  app::cmd_compare(json::object(), opts);
  const auto csv = read_csv(dir / "compare.csv");
  const double d_max = csv.rows.back()[0];
  std::vector<double> x, rf2, rf4, mcvd;
  bool ordered = true;
  for (const auto& r : csv.rows) {
    if (r[0] < d_max / 10 * (1 - 1e-9)) continue;
    x.push_back(std::log(r[0]));
    rf2.push_back(std::log(r[csv.col("P_rx_rf_alpha2")]));
    rf4.push_back(std::log(r[csv.col("P_rx_rf_alpha4")]));
    mcvd.push_back(std::log(r[csv.col("N_rx_mcvd")]));
    ordered = ordered && r[csv.col("N_rx_mcvd")] > r[csv.col("P_rx_rf_alpha2")] &&
              r[csv.col("P_rx_rf_alpha2")] > r[csv.col("P_rx_rf_alpha4")];
  }
  const double sm = ls_slope(x, mcvd), s2 = ls_slope(x, rf2), s4 = ls_slope(x, rf4);
  const bool ok = sm >= -1.05 && sm <= -0.95 && std::abs(s2 + 2) <= 0.01 && std::abs(s4 + 4) <= 0.01 && ordered;
  return {ok, fmt("MCvD slope %.4f", sm) + fmt(", RF a=2 %.4f", s2) + fmt(", RF a=4 %.4f", s4) +
                  (ordered ? ", MCvD > RF a=2 > RF a=4 over the final decade" : ", ordering violated")};
}

Outcome relay_histograms() {
  const auto dir = scratch("relay");
  app::GlobalOptions opts;
  opts.out_dir = dir;
  app::cmd_relay(json::object(), opts);
  const auto fits = json::parse(slurp(dir / "relay_fits.json"))["cases"];
  std::map<double, json> by_p;
  for (const auto& c : fits) by_p[c["p_one"].get<double>()] = c;
  const double m15 = by_p.at(0.15)["mean"], m50 = by_p.at(0.5)["mean"], m85 = by_p.at(0.85)["mean"];
  const bool a = m15 < m50 && m50 < m85;

  const auto& half = by_p.at(0.5);
  bool b = false;
  double ks = NAN, crit = NAN;
  if (half["status"] == "ok") {
    const double mu = half["mu"], sigma = half["sigma"], zeta = half["zeta"];
    const auto samples = half["samples"].get<std::vector<double>>();
    ks = oracle::ks(samples, [&](double x) { return gev_cdf_ref(mu, sigma, zeta, x); });
    crit = oracle::ks_critical_5pct(samples.size());
    b = ks < crit;
  }
  const double ratio = by_p.at(0.85)["harvest_ratio"];
  const bool c = ratio >= 0.10 && ratio <= 0.167;
  return {a && b && c, fmt("(a) means %.1f", m15) + fmt(" < %.1f", m50) + fmt(" < %.1f", m85) + (a ? " ok" : " FAIL") +
                           fmt("; (b) KS %.4f", ks) + fmt(" vs %.4f", crit) + (b ? " ok" : " FAIL") +
                           fmt("; (c) harvested/emitted %.4f in [0.10, 0.167]", ratio) + (c ? " ok" : " FAIL")};
}

Outcome asymptote() {
  const channel::LinkGeometry g{1e-3, 0.2e-3};
  const channel::DiffusionMedium m{1e-9, 0.0};
  const auto cfg = relay::RelayConfig::make(g, m, g, 2, 2, 1000);
  const double T = relay::default_bit_interval(cfg.sr);
  const double ceiling = g.R / (g.R + g.d);
  const int K = 500;
  const std::vector<std::uint8_t> ones(K, 1);
  const auto rec = relay::simulate_harvest_for_bits(cfg, ones, T, 77);
  const double mc_ratio = static_cast<double>(rec.total) / (1000.0 * K);
  // Expected per-interval harvest in the last interval, relative to one bit's emission.
  const double last = relay::expected_absorbed_in_interval(cfg, ones, K - 1, T) / 1000.0;
  const double rel_block = std::abs(mc_ratio - ceiling) / ceiling;
  const double rel_last = std::abs(last - ceiling) / ceiling;
  // Smallest K at which the last-interval reading reaches 2%, from erfc alone.
  const double x0 = oracle::bisect([](double v) { return std::erfc(v); }, 0.5, 0.0, 5.0);
  int k_needed = 1;
  while (std::erfc(x0 / std::sqrt(static_cast<double>(k_needed))) < 0.98) ++k_needed;
  return {rel_block <= 0.02 && rel_last <= 0.02,
          fmt("K=500 block harvested/emitted %.4f", mc_ratio) + fmt(" vs R/(R+d) %.4f", ceiling) +
              fmt(" (%.1f%% short)", 100 * rel_block) + fmt("; last-interval expectation %.4f", last) +
              fmt(" (%.1f%% short)", 100 * rel_last) + "; 2% needs K >= " + std::to_string(k_needed)};
}

Outcome shield() {
  const auto dir = scratch("shield");
  app::GlobalOptions opts;
  opts.out_dir = dir;
  app::cmd_shield(json::object(), opts);
  const auto csv = read_csv(dir / "shield.csv");
  std::vector<double> ratios;
  std::string detail = "ratios:";
  for (const auto& r : csv.rows) {
    const double model = std::erfc(r[0] / std::sqrt(4 * 1e-12 * 100.0));
    ratios.push_back(r[csv.col("estimate")] / model);
    detail += fmt(" %.3f", ratios.back());
  }
  const double cv = oracle::sample_sd(ratios) / oracle::sample_mean(ratios);
  return {ratios.size() == 5 && cv < 0.20, detail + fmt("; CV %.3f (limit 0.20)", cv)};
}

Outcome crowd_sweep() {
  const auto dir = scratch("crowd");
  app::GlobalOptions opts;
  opts.out_dir = dir;
  app::cmd_crowd(json::object(), opts);
  const auto scatter = read_csv(dir / "crowd_scatter.csv");
  std::map<double, std::vector<std::vector<double>>, std::greater<>> cells;
  for (const auto& r : scatter.rows) cells[r[0]].push_back(r);

  bool a = true, b_median = true, b_band = false, c = true;
  std::vector<double> logd, log_rf, log_mc;
  std::string gains = "median gain dB:";
  for (const auto& [density, rows] : cells) {
    std::vector<double> mc, rf, gain;
    for (const auto& r : rows) {
      mc.push_back(r[scatter.col("mcvd_pct")]);
      rf.push_back(r[scatter.col("rf_pct")]);
      gain.push_back(r[scatter.col("gain_db")]);
    }
    const double g50 = median(gain);
    gains += fmt(" %.2f", g50);
    a = a && g50 > 0.0;
    b_median = b_median && g50 >= 1.0 && g50 <= 6.0;
    const auto [lo, hi] = std::minmax_element(gain.begin(), gain.end());
    b_band = b_band || (*lo <= 2.0 && *hi >= 5.0);
    const double cv_mc = oracle::sample_sd(mc) / oracle::sample_mean(mc);
    const double cv_rf = oracle::sample_sd(rf) / oracle::sample_mean(rf);
    c = c && cv_mc < cv_rf;
    logd.push_back(std::log(density));
    log_rf.push_back(std::log(median(rf)));
    log_mc.push_back(std::log(median(mc)));
  }
  // Percentages fall as density falls; RF must fall faster.
  const double s_rf = ls_slope(logd, log_rf), s_mc = ls_slope(logd, log_mc);
  const bool d = s_rf > s_mc && s_mc > 0.0;
  const bool b = b_median && b_band;
  return {cells.size() == 5 && a && b && c && d,
          gains + (a ? "; (a) ok" : "; (a) FAIL") + (b ? "; (b) ok" : "; (b) FAIL: medians outside [1, 6] dB") +
              (c ? "; (c) ok" : "; (c) FAIL") + fmt("; (d) log-log slope vs density RF %.3f", s_rf) +
              fmt(" vs MCvD %.3f", s_mc) + (d ? " ok" : " FAIL")};
}

Outcome gev_round_trip() {
  std::mt19937_64 gen(31337);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> xs(100000);
  for (auto& x : xs) {
    double p = u(gen);
    while (p <= 0.0) p = u(gen);
    x = 10.0 + 2.0 * (std::pow(-std::log(p), -0.1) - 1.0) / 0.1;
  }
  const auto fit = gev::fit_gev(xs);
  const bool ok = std::abs(fit.mu - 10) <= 0.5 && std::abs(fit.sigma - 2) <= 0.1 && std::abs(fit.zeta - 0.1) <= 0.05;
  return {ok, fmt("mu %.4f", fit.mu) + fmt(", sigma %.4f", fit.sigma) + fmt(", zeta %.4f", fit.zeta)};
}

Outcome determinism() {
  const std::string cli = SMIET_CLI_PATH;
  int identical = 0, total = 0;
  std::string mismatches;
  for (const std::string cmd : {"channel", "compare", "relay", "crowd", "shield"}) {
    std::vector<fs::path> dirs;
    for (const char* threads : {"1", "8", "1", "8"}) {
      const auto dir = scratch(cmd + "_" + threads + "_" + std::to_string(dirs.size()));
      const std::string line = "\"" + cli + "\" " + cmd + " --seed 7 --threads " + threads + " --out \"" +
                               dir.string() + "\" > /dev/null";
      if (std::system(line.c_str()) != 0) return {false, "command failed: " + line};
      dirs.push_back(dir);
    }
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
      const auto name = entry.path().filename();
      const auto ref = slurp(entry.path());
      for (std::size_t i = 1; i < dirs.size(); ++i) {
        ++total;
        if (fs::exists(dirs[i] / name) && slurp(dirs[i] / name) == ref) {
          ++identical;
        } else {
          mismatches += " " + cmd + "/" + name.string();
        }
      }
    }
  }
  return {identical == total && total > 0,
          std::to_string(identical) + "/" + std::to_string(total) + " file comparisons byte-identical (threads 1 and 8, two runs each)" +
              mismatches};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "quadrature identity", 1.0, quadrature_identity},
      {2, "Monte Carlo channel equivalence", 60.0, mc_equivalence},
      {3, "dt-convergence", 300.0, dt_convergence},
      {4, "distance-decay slopes", 1.0, distance_slopes},
      {5, "relay harvest histograms", 120.0, relay_histograms},
      {6, "all-ones harvest asymptote", 10.0, asymptote},
      {7, "shield proportionality", 120.0, shield},
      {8, "crowd harvesting sweep", 120.0, crowd_sweep},
      {9, "GEV round trip", 5.0, gev_round_trip},
      {10, "determinism", 60.0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = out.pass && in_time;
    if (!pass) ++failures;
    std::printf("%s %d %s: %s [%.2f s, budget %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, out.detail.c_str(),
                secs, c.budget_s, in_time ? "" : ", OVER BUDGET");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
