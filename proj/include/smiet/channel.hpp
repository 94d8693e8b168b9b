#pragma once

/**
 * @file channel.hpp
 * @brief Closed-form diffusion and EM channel models.
 *
 * Geometry convention: a point transmitter at distance d from the surface of
 * a fully absorbing sphere of radius R (centre-to-source distance d + R) in
 * unbounded 3-D space. All quantities are SI (m, s, J, Hz).
 */

#include <cstdint>

namespace smiet::channel {

struct LinkGeometry {
  double d = 0.0;  ///< transmitter to receiver surface [m]
  double R = 0.0;  ///< receiver radius [m]

  /// Throws DomainError unless d > 0 and R > 0.
  void validate() const;
};

struct DiffusionMedium {
  double D = 0.0;           ///< mass diffusivity [m^2/s]
  double decay_rate = 0.0;  ///< first-order molecule decay [1/s]

  void validate() const;
};

struct MoleculeSpec {
  static constexpr double kDefaultBondCost = 202.88e-21;  ///< J per peptide bond

  std::int64_t n = 1;             ///< amino acids per molecule
  double phi = kDefaultBondCost;  ///< synthesis cost per bond [J]

  void validate() const;
};

struct EmLinkParams {
  double f = 5e9;                           ///< carrier frequency [Hz]
  double R = 0.1;                           ///< receiver antenna radius [m]
  double alpha = 2.0;                       ///< path-loss exponent
  double k = 0.0;                           ///< absorption coefficient, tau = exp(-k f d)
  double mu = 1.0;                          ///< transmitter efficiency
  double aeff_coeff = 0.56 * 3.14159265358979323846;  ///< A_eff = aeff_coeff * R^2

  void validate() const;
};

/// First-passage time density h_c(t) of the absorbing sphere, including the
/// optional exp(-decay_rate t) survival factor.
double first_passage_density(const LinkGeometry& geom, const DiffusionMedium& med, double t);

/// Expected fraction of emitted molecules absorbed by time T:
/// (R/(d+R)) erfc(d / sqrt(4 D T)) without decay. T may be +infinity.
double capture_fraction(const LinkGeometry& geom, const DiffusionMedium& med, double T);

/// t -> infinity limit of capture_fraction without decay, R/(d+R).
double asymptotic_capture(const LinkGeometry& geom);

/// Mode of h_c without decay, d^2 / (6 D).
double peak_time(const LinkGeometry& geom, const DiffusionMedium& med);

/// Bit interval T for which capture_fraction(T) equals `ratio` times the
/// asymptotic capture (no decay).
double interval_for_capture_ratio(const LinkGeometry& geom, const DiffusionMedium& med, double ratio);

/// Absorption loss exp(-k f d).
double transmittance(const EmLinkParams& p, double d);

/// mu tau aeff_coeff R^2 / d^alpha, clamped to at most 1 near the source.
double em_received_fraction(const EmLinkParams& p, double d);

struct McvdEfficiency {
  bool unbounded = false;           ///< n = 1: zero synthesis cost
  double molecules_per_joule = 0.0; ///< valid only when !unbounded
};

/// Received molecules per joule of synthesis energy at t -> infinity:
/// R/(d+R) / (phi (n - 1)).
McvdEfficiency mcvd_efficiency(const MoleculeSpec& spec, const LinkGeometry& geom);

/// Energy to synthesise `count` molecules, phi (n - 1) count.
double synthesis_cost(const MoleculeSpec& spec, double count);

/// Stokes-Einstein scaling D proportional to n^(-1/3).
double diffusivity_for_size(double D_ref, double n_ref, double n);

}  // namespace smiet::channel
