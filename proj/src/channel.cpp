#include "smiet/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "smiet/errors.hpp"
#include "smiet/numerics.hpp"

namespace smiet::channel {

void LinkGeometry::validate() const {
  if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("link distance d must be positive and finite");
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("receiver radius R must be positive and finite");
}

void DiffusionMedium::validate() const {
  if (!(D > 0.0) || !std::isfinite(D)) throw DomainError("diffusivity D must be positive and finite");
  if (!(decay_rate >= 0.0)) throw DomainError("decay rate must be non-negative");
}

void MoleculeSpec::validate() const {
  if (n < 1) throw DomainError("a molecule has at least one amino acid");
  if (!(phi >= 0.0)) throw DomainError("bond synthesis cost must be non-negative");
}

void EmLinkParams::validate() const {
  if (!(alpha >= 2.0)) throw DomainError("path-loss exponent must be >= 2");
  if (!(mu > 0.0 && mu <= 1.0)) throw DomainError("transmitter efficiency must lie in (0, 1]");
  if (!(k >= 0.0) || !(f >= 0.0)) throw DomainError("absorption coefficient and frequency must be non-negative");
  if (!(R > 0.0) || !(aeff_coeff > 0.0)) throw DomainError("antenna radius and area coefficient must be positive");
}

double first_passage_density(const LinkGeometry& geom, const DiffusionMedium& med, double t) {
  geom.validate();
  med.validate();
  if (!(t > 0.0)) throw DomainError("first_passage_density: t must be positive");
  const double d = geom.d;
  const double prefactor = asymptotic_capture(geom) * d / std::sqrt(4.0 * std::numbers::pi * med.D * t * t * t);
  return prefactor * std::exp(-d * d / (4.0 * med.D * t) - med.decay_rate * t);
}

double capture_fraction(const LinkGeometry& geom, const DiffusionMedium& med, double T) {
  geom.validate();
  med.validate();
  if (!(T >= 0.0)) throw DomainError("capture_fraction: T must be non-negative");
  const double ceiling = asymptotic_capture(geom);
  if (T == 0.0) return 0.0;
  const double k = med.decay_rate;
  if (k == 0.0) {
    if (std::isinf(T)) return ceiling;
    return ceiling * std::erfc(geom.d / std::sqrt(4.0 * med.D * T));
  }
  // Laplace-weighted Levy integral: int_0^T h(t) exp(-k t) dt.
  const double b = geom.d * std::sqrt(k / med.D);
  if (std::isinf(T)) return ceiling * std::exp(-b);
  const double x = geom.d / std::sqrt(4.0 * med.D * T);
  const double s = std::sqrt(k * T);
  return ceiling * 0.5 * (numerics::exp_times_erfc(-b, x - s) + numerics::exp_times_erfc(b, x + s));
}

double asymptotic_capture(const LinkGeometry& geom) {
  geom.validate();
  return geom.R / (geom.d + geom.R);
}

double peak_time(const LinkGeometry& geom, const DiffusionMedium& med) {
  geom.validate();
  med.validate();
  return geom.d * geom.d / (6.0 * med.D);
}

double interval_for_capture_ratio(const LinkGeometry& geom, const DiffusionMedium& med, double ratio) {
  geom.validate();
  med.validate();
  if (!(ratio > 0.0 && ratio < 1.0)) throw DomainError("capture ratio must lie in (0, 1)");
  const double x = numerics::erfc_inverse(ratio);
  return geom.d * geom.d / (4.0 * med.D * x * x);
}

double transmittance(const EmLinkParams& p, double d) { return std::exp(-p.k * p.f * d); }

double em_received_fraction(const EmLinkParams& p, double d) {
  p.validate();
  if (!(d > 0.0)) throw DomainError("em_received_fraction: d must be positive");
  const double raw = p.mu * transmittance(p, d) * p.aeff_coeff * p.R * p.R / std::pow(d, p.alpha);
  return std::min(1.0, raw);
}

McvdEfficiency mcvd_efficiency(const MoleculeSpec& spec, const LinkGeometry& geom) {
  spec.validate();
  const double capture = asymptotic_capture(geom);
  const double cost = synthesis_cost(spec, 1.0);
  if (cost == 0.0) return {.unbounded = true, .molecules_per_joule = std::numeric_limits<double>::infinity()};
  return {.unbounded = false, .molecules_per_joule = capture / cost};
}

double synthesis_cost(const MoleculeSpec& spec, double count) {
  spec.validate();
  if (!(count >= 0.0)) throw DomainError("synthesis_cost: count must be non-negative");
  return spec.phi * static_cast<double>(spec.n - 1) * count;
}

double diffusivity_for_size(double D_ref, double n_ref, double n) {
  if (!(D_ref > 0.0)) throw DomainError("reference diffusivity must be positive");
  if (!(n_ref >= 1.0) || !(n >= 1.0)) throw DomainError("amino-acid counts must be >= 1");
  return D_ref * std::cbrt(n_ref / n);
}

}  // namespace smiet::channel
