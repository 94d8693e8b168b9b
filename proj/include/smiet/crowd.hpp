#pragma once

/**
 * @file crowd.hpp
 * @brief Crowd energy harvesting from a 2-D field of transmitters around a
 * harvesting receiver at the origin: Thomas cluster and Poisson fields,
 * per-field MCvD and RF harvested percentages, and density sweeps.
 */

#include <cstdint>
#include <span>
#include <vector>

namespace smiet::crowd {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct PcpParams {
  double area_radius = 100.0;       ///< m; cluster centres are uniform in this disk
  int n_clusters = 20;
  int nodes_per_cluster = 10;
  double cluster_sd = 30.0;         ///< m, per-axis Gaussian offset
  double receiver_radius = 1.0;     ///< m
  std::uint64_t seed = 0;

  void validate() const;
  int node_count() const { return n_clusters * nodes_per_cluster; }
  /// Nodes per m^2 over the modelling disk.
  double density() const;
};

struct NodeField {
  std::vector<Point2> positions;
  double receiver_radius = 1.0;

  /// Node-to-receiver-surface distances d_i = |p_i| - R_h.
  std::vector<double> surface_distances() const;
};

/// Thomas cluster field with a fixed number of nodes per cluster; nodes that
/// fall inside the receiver are redrawn.
NodeField sample_thomas_pcp(const PcpParams& p);

/// Homogeneous Poisson field in a disk; nodes inside the receiver are redrawn.
NodeField sample_ppp(double intensity, double area_radius, std::uint64_t seed, double receiver_radius = 1.0);

/// 100 * mean_i R_h / (d_i + R_h); n_tx_per_node cancels.
double harvested_fraction_mcvd(const NodeField& field, double n_tx_per_node = 1.0);

struct RfParams {
  double alpha = 2.0;
  double p_tx = 1.0;                                  ///< W, cancels in the percentage
  double c = 0.56 * 3.14159265358979323846;           ///< aeff_coeff * mu * tau
};

/// 100 * mean_i min(1, c R_h^2 / d_i^alpha).
double harvested_fraction_rf(const NodeField& field, const RfParams& rf = {});

/// 10 log10(mcvd / rf).
double gain_db(double mcvd_pct, double rf_pct);

/// n-th smallest node distance to the receiver centre (n is 1-based).
double nth_nearest_distance(const NodeField& field, int n);

struct SweepSample {
  double density = 0.0;
  double area_radius = 0.0;
  int draw = 0;
  double mcvd_pct = 0.0;
  double rf_pct = 0.0;
  double gain_db = 0.0;
};

struct HarvestSweepRow {
  double density = 0.0;
  double area_radius = 0.0;
  double mcvd_pct_q25 = 0.0, mcvd_pct_q50 = 0.0, mcvd_pct_q75 = 0.0;
  double rf_pct_q25 = 0.0, rf_pct_q50 = 0.0, rf_pct_q75 = 0.0;
  double gain_db_q25 = 0.0, gain_db_q50 = 0.0, gain_db_q75 = 0.0;
  double mcvd_cv = 0.0;
  double rf_cv = 0.0;
};

struct SweepResult {
  std::vector<HarvestSweepRow> rows;    ///< one per area radius, in input order
  std::vector<SweepSample> scatter;     ///< (radius, draw) order
};

/// n_draws independent fields per area radius; cell (i, draw) is seeded from
/// (base.seed, i, draw).
SweepResult density_sweep(const PcpParams& base, std::span<const double> area_radii, int n_draws,
                          const RfParams& rf = {}, unsigned threads = 1);

}  // namespace smiet::crowd
