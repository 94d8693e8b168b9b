#include "smiet/particle_sim.hpp"

#include <algorithm>
#include <boost/random/normal_distribution.hpp>
#include <cmath>
#include <string>

#include "smiet/errors.hpp"
#include "smiet/rng.hpp"

namespace smiet::sim {
namespace {

// Domain-separation tags for derive_seed.
constexpr std::uint64_t kAbsorptionStream = 0x41425342;  // "ABSB"
constexpr std::uint64_t kShieldStream = 0x53484c44;      // "SHLD"

constexpr double kRootEpsilon = 1e-12;
constexpr int kMaxReflections = 8;

Vec3 source_position(const SimConfig& cfg) { return {cfg.geometry.d + cfg.geometry.R, 0.0, 0.0}; }

Vec3 reflect_knife_edge(Vec3 a, Vec3 b, const ShieldSpec& s) {
  const double px = *s.plane_x;
  const double da = a.x - px;
  const double db = b.x - px;
  if (!(da * db < 0.0)) return b;
  const double frac = da / (da - db);
  const double z_cross = a.z + frac * (b.z - a.z);
  if (z_cross > s.H) return b;  // passes above the edge
  b.x = 2.0 * px - b.x;
  return b;
}

Vec3 reflect_spherical_cap(Vec3 a, Vec3 b, const ShieldSpec& s) {
  const double radius = *s.shell_radius;
  const double cos_open = std::cos(s.aperture_half_angle);
  const Vec3 origin = a;
  for (int iter = 0; iter < kMaxReflections; ++iter) {
    const Vec3 v = b - a;
    const double qa = dot(v, v);
    if (qa == 0.0) return b;
    const double qb = 2.0 * dot(a, v);
    const double qc = dot(a, a) - radius * radius;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) return b;
    const double sq = std::sqrt(disc);
    const double roots[2] = {(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)};
    bool reflected = false;
    for (double root : roots) {
      if (root <= kRootEpsilon || root > 1.0) continue;
      const Vec3 p = a + root * v;
      const double r = norm(p);
      if (p.x / r >= cos_open) continue;  // through the aperture
      const Vec3 n = (1.0 / r) * p;
      const Vec3 rest = b - p;
      b = p + rest - (2.0 * dot(rest, n)) * n;
      a = p;
      reflected = true;
      break;
    }
    if (!reflected) return b;
  }
  return origin;
}

// Probability that the radial (Bessel-3) bridge from r0 to r1 over a step
// with D*h = dh touches radius R. Exact for the angle-integrated process,
// which is all that matters for a spherically symmetric receiver.
double radial_bridge_hit(double r0, double r1, double R, double dh) {
  const double both = std::exp(-r0 * r1 / dh);
  return (std::exp(-(r0 - R) * (r1 - R) / dh) - both) / -std::expm1(-r0 * r1 / dh);
}

// One particle's walk. Returns the absorption time, or -1 if the particle
// survives un-absorbed to the horizon (or decays first).
double walk_to_receiver(const SimConfig& cfg, const std::optional<ShieldSpec>& shield, std::uint64_t seed) {
  rng::Xoshiro256pp gen(seed);
  boost::random::normal_distribution<double> normal;
  const double R = cfg.geometry.R;
  const double R2 = R * R;
  const double D = cfg.medium.D;
  const bool bridge = cfg.absorption == AbsorptionTest::kBrownianBridge;
  const std::int64_t steps = cfg.step_count();
  Vec3 pos = source_position(cfg);
  double t = 0.0;
  for (std::int64_t s = 0; s < steps; ++s) {
    const double t_end = (s + 1 == steps) ? cfg.horizon : static_cast<double>(s + 1) * cfg.dt;
    const double h = t_end - t;
    t = t_end;
    if (cfg.medium.decay_rate > 0.0 && gen.uniform() >= std::exp(-cfg.medium.decay_rate * h)) return -1.0;
    const double sigma = std::sqrt(2.0 * D * h);
    Vec3 next{pos.x + sigma * normal(gen), pos.y + sigma * normal(gen), pos.z + sigma * normal(gen)};
    if (shield) next = reflect_step(pos, next, *shield);
    const double r2 = dot(next, next);
    if (r2 <= R2) return t;
    if (bridge) {
      const double r0 = norm(pos);
      const double r1 = std::sqrt(r2);
      if ((r0 - R) * (r1 - R) < 40.0 * D * h && gen.uniform() < radial_bridge_hit(r0, r1, R, D * h)) return t;
    }
    pos = next;
  }
  return -1.0;
}

}  // namespace

double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

void ShieldSpec::validate() const {
  if (!(H >= 0.0)) throw ConfigError("shield clearance height H must be >= 0");
  if (tx_separation && !(*tx_separation > 0.0)) throw ConfigError("shield tx_separation must be positive");
  if (shell_radius && !(*shell_radius > 0.0)) throw ConfigError("shield shell_radius must be positive");
  if (!(aperture_half_angle >= 0.0 && aperture_half_angle <= 3.14159265358979323846)) {
    throw ConfigError("shield aperture half-angle must lie in [0, pi]");
  }
}

ShieldSpec ShieldSpec::resolved(double receiver_radius) const {
  ShieldSpec out = *this;
  if (!out.tx_separation) out.tx_separation = 2.0 * receiver_radius;
  if (!out.plane_x) out.plane_x = 0.5 * *out.tx_separation;
  if (!out.shell_radius) out.shell_radius = 1.5 * receiver_radius;
  return out;
}

void SimConfig::validate() const {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(horizon >= dt)) throw ConfigError("horizon must be at least one time step");
  if (n_particles < 1) throw ConfigError("n_particles must be >= 1");
  if (n_trials < 1) throw ConfigError("n_trials must be >= 1");
  try {
    medium.validate();
    geometry.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (shield) shield->validate();
  const double step_sd = std::sqrt(2.0 * medium.D * dt);
  if (step_sd > geometry.R / 4.0) {
    throw ConfigError("time step too coarse: sqrt(2 D dt) = " + std::to_string(step_sd) +
                      " exceeds R/4 = " + std::to_string(geometry.R / 4.0));
  }
}

std::int64_t SimConfig::step_count() const {
  return static_cast<std::int64_t>(std::ceil(horizon / dt * (1.0 - 1e-12)));
}

std::vector<double> HittingRecord::hit_times() const {
  std::vector<double> out;
  out.reserve(hits.size());
  for (const auto& h : hits) out.push_back(h.time);
  return out;
}

Vec3 reflect_step(Vec3 position, Vec3 proposed, const ShieldSpec& shield) {
  switch (shield.kind) {
    case ShieldKind::kStraightKnifeEdge:
      if (!shield.plane_x) throw ConfigError("knife-edge shield needs plane_x (call resolved())");
      return reflect_knife_edge(position, proposed, shield);
    case ShieldKind::kSphericalPartial:
      if (!shield.shell_radius) throw ConfigError("spherical shield needs shell_radius (call resolved())");
      return reflect_spherical_cap(position, proposed, shield);
  }
  return proposed;
}

HittingRecord run_absorption_trial(const SimConfig& cfg, std::int64_t trial_index, unsigned threads) {
  cfg.validate();
  if (trial_index < 0 || trial_index >= cfg.n_trials) throw ConfigError("trial index out of range");
  std::optional<ShieldSpec> shield;
  if (cfg.shield) shield = cfg.shield->resolved(cfg.geometry.R);

  std::vector<double> times(static_cast<std::size_t>(cfg.n_particles), -1.0);
  rng::parallel_for(times.size(), threads, [&](std::size_t i) {
    const auto seed = rng::derive_seed(cfg.master_seed, {kAbsorptionStream, static_cast<std::uint64_t>(trial_index), i});
    times[i] = walk_to_receiver(cfg, shield, seed);
  });

  HittingRecord record;
  record.trial = trial_index;
  record.n_emitted = cfg.n_particles;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] > 0.0) record.hits.push_back({static_cast<std::int64_t>(i), times[i]});
  }
  return record;
}

std::vector<HittingRecord> run_all_trials(const SimConfig& cfg, unsigned threads) {
  std::vector<HittingRecord> records;
  records.reserve(static_cast<std::size_t>(cfg.n_trials));
  for (std::int64_t trial = 0; trial < cfg.n_trials; ++trial) records.push_back(run_absorption_trial(cfg, trial, threads));
  return records;
}

Estimate empirical_capture_fraction(const SimConfig& cfg, unsigned threads) {
  std::int64_t emitted = 0;
  std::int64_t absorbed = 0;
  for (const auto& record : run_all_trials(cfg, threads)) {
    emitted += record.n_emitted;
    absorbed += record.n_absorbed();
  }
  const double p = static_cast<double>(absorbed) / static_cast<double>(emitted);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(emitted))};
}

HittingHistogram empirical_hitting_histogram(const SimConfig& cfg, int bins, unsigned threads) {
  if (bins < 2) throw ConfigError("histogram needs at least 2 bins");
  HittingHistogram hist;
  const double width = cfg.horizon / bins;
  hist.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) hist.edges[static_cast<std::size_t>(i)] = cfg.horizon * i / bins;
  hist.counts.assign(static_cast<std::size_t>(bins), 0);
  for (const auto& record : run_all_trials(cfg, threads)) {
    hist.n_emitted += record.n_emitted;
    for (const auto& hit : record.hits) {
      // Bins are (lo, hi]; hit times sit on step ends.
      const double upper = std::ceil(hit.time / width * (1.0 - 1e-12));
      const auto bin = static_cast<std::size_t>(std::clamp(upper - 1.0, 0.0, static_cast<double>(bins - 1)));
      ++hist.counts[bin];
    }
  }
  hist.density.resize(hist.counts.size());
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    hist.density[i] = static_cast<double>(hist.counts[i]) / (static_cast<double>(hist.n_emitted) * width);
  }
  return hist;
}

Estimate shield_self_interference_mc(const SimConfig& cfg, double H, unsigned threads) {
  if (!cfg.shield) throw ConfigError("shield experiment needs a shield");
  if (cfg.shield->kind != ShieldKind::kStraightKnifeEdge) {
    throw UnsupportedError("self-interference experiment supports only the straight knife-edge shield");
  }
  if (!(H >= 0.0)) throw ConfigError("shield clearance height H must be >= 0");
  cfg.validate();
  ShieldSpec shield = cfg.shield->resolved(cfg.geometry.R);
  shield.H = H;
  const Vec3 emitter{*shield.tx_separation, 0.0, 0.0};
  const double wall = *shield.plane_x;
  if (!(emitter.x > wall)) throw ConfigError("relay transmitter must sit on the far side of the shield plane");

  const std::int64_t total = cfg.n_particles * cfg.n_trials;
  std::vector<unsigned char> crossed(static_cast<std::size_t>(total), 0);
  const std::int64_t steps = cfg.step_count();
  rng::parallel_for(crossed.size(), threads, [&](std::size_t i) {
    const auto trial = static_cast<std::uint64_t>(i) / static_cast<std::uint64_t>(cfg.n_particles);
    const auto particle = static_cast<std::uint64_t>(i) % static_cast<std::uint64_t>(cfg.n_particles);
    rng::Xoshiro256pp gen(rng::derive_seed(cfg.master_seed, {kShieldStream, trial, particle}));
    boost::random::normal_distribution<double> normal;
    Vec3 pos = emitter;
    double t = 0.0;
    for (std::int64_t s = 0; s < steps; ++s) {
      const double t_end = (s + 1 == steps) ? cfg.horizon : static_cast<double>(s + 1) * cfg.dt;
      const double h = t_end - t;
      t = t_end;
      if (cfg.medium.decay_rate > 0.0 && gen.uniform() >= std::exp(-cfg.medium.decay_rate * h)) return;
      const double sigma = std::sqrt(2.0 * cfg.medium.D * h);
      const Vec3 next{pos.x + sigma * normal(gen), pos.y + sigma * normal(gen), pos.z + sigma * normal(gen)};
      pos = reflect_step(pos, next, shield);
      if (pos.x < wall) {
        crossed[i] = 1;
        return;
      }
    }
  });
  std::int64_t hits = 0;
  for (auto c : crossed) hits += c;
  const double p = static_cast<double>(hits) / static_cast<double>(total);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(total))};
}

}  // namespace smiet::sim
