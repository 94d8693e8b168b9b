#include "smiet/crowd.hpp"

#include <algorithm>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/poisson_distribution.hpp>
#include <cmath>
#include <numbers>

#include "smiet/errors.hpp"
#include "smiet/numerics.hpp"
#include "smiet/rng.hpp"

namespace smiet::crowd {
namespace {

constexpr std::uint64_t kPcpStream = 0x50435053;    // "PCPS"
constexpr std::uint64_t kPppStream = 0x50505053;    // "PPPS"
constexpr std::uint64_t kSweepStream = 0x53575050;  // "SWPP"

Point2 uniform_in_disk(double radius, rng::Xoshiro256pp& gen) {
  const double r = radius * std::sqrt(gen.uniform());
  const double theta = 2.0 * std::numbers::pi * gen.uniform();
  return {r * std::cos(theta), r * std::sin(theta)};
}

double radius_of(Point2 p) { return std::hypot(p.x, p.y); }

}  // namespace

void PcpParams::validate() const {
  if (!(area_radius > 0.0)) throw ConfigError("area_radius must be positive");
  if (n_clusters < 1 || nodes_per_cluster < 1) throw ConfigError("cluster counts must be >= 1");
  if (!(cluster_sd > 0.0)) throw ConfigError("cluster_sd must be positive");
  if (!(receiver_radius > 0.0)) throw ConfigError("receiver_radius must be positive");
}

double PcpParams::density() const {
  return static_cast<double>(node_count()) / (std::numbers::pi * area_radius * area_radius);
}

std::vector<double> NodeField::surface_distances() const {
  std::vector<double> d;
  d.reserve(positions.size());
  for (const auto& p : positions) d.push_back(radius_of(p) - receiver_radius);
  return d;
}

NodeField sample_thomas_pcp(const PcpParams& p) {
  p.validate();
  rng::Xoshiro256pp gen(rng::derive_seed(p.seed, {kPcpStream}));
  boost::random::normal_distribution<double> offset(0.0, p.cluster_sd);
  NodeField field;
  field.receiver_radius = p.receiver_radius;
  field.positions.reserve(static_cast<std::size_t>(p.node_count()));
  for (int c = 0; c < p.n_clusters; ++c) {
    const Point2 centre = uniform_in_disk(p.area_radius, gen);
    for (int n = 0; n < p.nodes_per_cluster; ++n) {
      Point2 node;
      do {
        node = {centre.x + offset(gen), centre.y + offset(gen)};
      } while (radius_of(node) <= p.receiver_radius);
      field.positions.push_back(node);
    }
  }
  return field;
}

NodeField sample_ppp(double intensity, double area_radius, std::uint64_t seed, double receiver_radius) {
  if (!(intensity > 0.0)) throw ConfigError("PPP intensity must be positive");
  if (!(area_radius > receiver_radius)) throw ConfigError("area radius must exceed the receiver radius");
  rng::Xoshiro256pp gen(rng::derive_seed(seed, {kPppStream}));
  boost::random::poisson_distribution<std::int64_t, double> count_dist(intensity * std::numbers::pi * area_radius *
                                                                       area_radius);
  const std::int64_t count = count_dist(gen);
  NodeField field;
  field.receiver_radius = receiver_radius;
  field.positions.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    Point2 node;
    do {
      node = uniform_in_disk(area_radius, gen);
    } while (radius_of(node) <= receiver_radius);
    field.positions.push_back(node);
  }
  return field;
}

double harvested_fraction_mcvd(const NodeField& field, double n_tx_per_node) {
  if (field.positions.empty()) return 0.0;
  const double R = field.receiver_radius;
  double harvested = 0.0;
  for (double d : field.surface_distances()) harvested += R / (d + R) * n_tx_per_node;
  return 100.0 * harvested / (static_cast<double>(field.positions.size()) * n_tx_per_node);
}

double harvested_fraction_rf(const NodeField& field, const RfParams& rf) {
  if (!(rf.alpha >= 2.0)) throw DomainError("path-loss exponent must be >= 2");
  if (field.positions.empty()) return 0.0;
  const double R = field.receiver_radius;
  double harvested = 0.0;
  for (double d : field.surface_distances()) {
    harvested += rf.p_tx * std::min(1.0, rf.c * R * R / std::pow(d, rf.alpha));
  }
  return 100.0 * harvested / (static_cast<double>(field.positions.size()) * rf.p_tx);
}

double gain_db(double mcvd_pct, double rf_pct) { return 10.0 * std::log10(mcvd_pct / rf_pct); }

double nth_nearest_distance(const NodeField& field, int n) {
  if (n < 1 || static_cast<std::size_t>(n) > field.positions.size()) {
    throw DomainError("nth_nearest_distance: rank out of range");
  }
  std::vector<double> r;
  r.reserve(field.positions.size());
  for (const auto& p : field.positions) r.push_back(radius_of(p));
  std::nth_element(r.begin(), r.begin() + (n - 1), r.end());
  return r[static_cast<std::size_t>(n - 1)];
}

SweepResult density_sweep(const PcpParams& base, std::span<const double> area_radii, int n_draws,
                          const RfParams& rf, unsigned threads) {
  if (n_draws < 1) throw ConfigError("n_draws must be >= 1");
  if (area_radii.empty()) throw ConfigError("density sweep needs at least one area radius");
  const std::size_t draws = static_cast<std::size_t>(n_draws);
  SweepResult out;
  out.scatter.resize(area_radii.size() * draws);
  rng::parallel_for(out.scatter.size(), threads, [&](std::size_t cell) {
    const std::size_t i = cell / draws;
    const std::size_t draw = cell % draws;
    PcpParams p = base;
    p.area_radius = area_radii[i];
    p.seed = rng::derive_seed(base.seed, {kSweepStream, i, draw});
    const NodeField field = sample_thomas_pcp(p);
    SweepSample s;
    s.density = p.density();
    s.area_radius = p.area_radius;
    s.draw = static_cast<int>(draw);
    s.mcvd_pct = harvested_fraction_mcvd(field);
    s.rf_pct = harvested_fraction_rf(field, rf);
    s.gain_db = gain_db(s.mcvd_pct, s.rf_pct);
    out.scatter[cell] = s;
  });

  for (std::size_t i = 0; i < area_radii.size(); ++i) {
    std::vector<double> mcvd;
    std::vector<double> rfp;
    std::vector<double> gain;
    for (std::size_t draw = 0; draw < draws; ++draw) {
      const auto& s = out.scatter[i * draws + draw];
      mcvd.push_back(s.mcvd_pct);
      rfp.push_back(s.rf_pct);
      gain.push_back(s.gain_db);
    }
    HarvestSweepRow row;
    row.density = out.scatter[i * draws].density;
    row.area_radius = area_radii[i];
    row.mcvd_pct_q25 = numerics::quantile(mcvd, 0.25);
    row.mcvd_pct_q50 = numerics::quantile(mcvd, 0.50);
    row.mcvd_pct_q75 = numerics::quantile(mcvd, 0.75);
    row.rf_pct_q25 = numerics::quantile(rfp, 0.25);
    row.rf_pct_q50 = numerics::quantile(rfp, 0.50);
    row.rf_pct_q75 = numerics::quantile(rfp, 0.75);
    row.gain_db_q25 = numerics::quantile(gain, 0.25);
    row.gain_db_q50 = numerics::quantile(gain, 0.50);
    row.gain_db_q75 = numerics::quantile(gain, 0.75);
    row.mcvd_cv = numerics::coefficient_of_variation(mcvd);
    row.rf_cv = numerics::coefficient_of_variation(rfp);
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace smiet::crowd
