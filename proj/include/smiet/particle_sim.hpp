#pragma once

/**
 * @file particle_sim.hpp
 * @brief Monte Carlo Brownian-motion engine with absorbing spherical
 * receivers and perfectly reflecting shields.
 *
 * Frame: the receiver sphere is centred at the origin; the point source sits
 * at (d + R, 0, 0). Every (trial, particle) pair draws from its own
 * counter-derived generator, so results do not depend on the thread count.
 */

#include <cstdint>
#include <optional>
#include <vector>

#include "smiet/channel.hpp"

namespace smiet::sim {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

double dot(Vec3 a, Vec3 b);
double norm(Vec3 a);

enum class ShieldKind { kStraightKnifeEdge, kSphericalPartial };

struct ShieldSpec {
  ShieldKind kind = ShieldKind::kStraightKnifeEdge;
  /// Knife edge: the wall occupies {x = plane_x, z <= H}; particles must pass
  /// above height H to cross it.
  double H = 0.0;
  /// Knife edge: x position of the wall. Defaults to half the TX-RX separation.
  std::optional<double> plane_x;
  /// Knife-edge experiment: relay TX to RX-centre distance. Defaults to 2R.
  std::optional<double> tx_separation;
  /// Spherical cap: shell radius around the receiver centre. Defaults to 1.5R.
  std::optional<double> shell_radius;
  /// Spherical cap: half-angle of the open aperture about the +x (source)
  /// direction. Default pi/2 leaves the source-facing hemisphere open.
  double aperture_half_angle = 1.5707963267948966;

  void validate() const;
  /// Copy with every optional placement filled in for a receiver of radius R.
  ShieldSpec resolved(double receiver_radius) const;
};

enum class AbsorptionTest {
  kPointInSphere,   ///< absorbed iff the post-step position is inside the sphere
  /// Additionally absorbs with the probability that the radial bridge between
  /// the two step ends touched the sphere; removes the discretisation bias.
  kBrownianBridge,
};

struct SimConfig {
  double dt = 0.0;
  double horizon = 0.0;
  std::int64_t n_particles = 0;
  std::int64_t n_trials = 1;
  std::uint64_t master_seed = 0;
  channel::DiffusionMedium medium;
  channel::LinkGeometry geometry;
  std::optional<ShieldSpec> shield;
  AbsorptionTest absorption = AbsorptionTest::kPointInSphere;

  /// Throws ConfigError, including when sqrt(2 D dt) > R / 4.
  void validate() const;
  std::int64_t step_count() const;
};

struct Hit {
  std::int64_t particle = 0;
  double time = 0.0;
};

struct HittingRecord {
  std::int64_t trial = 0;
  std::int64_t n_emitted = 0;
  std::vector<Hit> hits;  ///< ordered by particle index

  std::int64_t n_absorbed() const { return static_cast<std::int64_t>(hits.size()); }
  std::vector<double> hit_times() const;
};

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

struct HittingHistogram {
  std::vector<double> edges;    ///< bins + 1 edges over [0, horizon]
  std::vector<std::int64_t> counts;
  std::vector<double> density;  ///< counts / (n_emitted * width); integrates to the capture fraction
  std::int64_t n_emitted = 0;
};

HittingRecord run_absorption_trial(const SimConfig& cfg, std::int64_t trial_index, unsigned threads = 1);

/// All trials, concatenated in (trial, particle) order.
std::vector<HittingRecord> run_all_trials(const SimConfig& cfg, unsigned threads = 1);

/// Pooled absorbed / emitted and its binomial standard error.
Estimate empirical_capture_fraction(const SimConfig& cfg, unsigned threads = 1);

HittingHistogram empirical_hitting_histogram(const SimConfig& cfg, int bins, unsigned threads = 1);

/// Fraction of particles released at the relay transmitter that clear the
/// knife-edge wall (height H) into the receiver half-space within the horizon.
Estimate shield_self_interference_mc(const SimConfig& cfg, double H, unsigned threads = 1);

/// Specular reflection of the step position -> proposed about the shield
/// surface. Returns `proposed` unchanged when the step does not hit the
/// shield. The shield must be resolved (placement fields set).
Vec3 reflect_step(Vec3 position, Vec3 proposed, const ShieldSpec& shield);

}  // namespace smiet::sim
