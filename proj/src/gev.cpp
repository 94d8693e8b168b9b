#include "smiet/gev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "smiet/errors.hpp"

namespace smiet::gev {
namespace {

constexpr double kGumbelThreshold = 1e-9;

// L-skewness of a GEV with Hosking shape k = -zeta:
// tau3 = 2 (1 - 3^-k) / (1 - 2^-k) - 3.
double tau3_for_shape(double k) {
  if (std::abs(k) < kGumbelThreshold) return 2.0 * std::log(3.0) / std::log(2.0) - 3.0;
  return 2.0 * std::expm1(-k * std::log(3.0)) / std::expm1(-k * std::log(2.0)) - 3.0;
}

// Inverts tau3_for_shape, which is strictly decreasing on (-1, inf).
double shape_for_tau3(double tau3) {
  double lo = -1.0 + 1e-9;
  double hi = 60.0;
  if (tau3 >= tau3_for_shape(lo) || tau3 <= tau3_for_shape(hi)) {
    throw FitError("sample L-skewness outside the range attainable by a GEV");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (tau3_for_shape(mid) > tau3) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

void GevParams::validate() const {
  if (!(sigma > 0.0)) throw DomainError("GEV scale must be positive");
}

bool GevParams::in_support(double x) const {
  if (std::abs(zeta) < kGumbelThreshold) return std::isfinite(x);
  return 1.0 + zeta * (x - mu) / sigma > 0.0;
}

double gev_cdf(const GevParams& p, double x) {
  p.validate();
  const double z = (x - p.mu) / p.sigma;
  if (std::abs(p.zeta) < kGumbelThreshold) return std::exp(-std::exp(-z));
  const double t = 1.0 + p.zeta * z;
  if (t <= 0.0) return p.zeta > 0.0 ? 0.0 : 1.0;
  return std::exp(-std::pow(t, -1.0 / p.zeta));
}

double gev_pdf(const GevParams& p, double x) {
  p.validate();
  const double z = (x - p.mu) / p.sigma;
  if (std::abs(p.zeta) < kGumbelThreshold) return std::exp(-z - std::exp(-z)) / p.sigma;
  const double t = 1.0 + p.zeta * z;
  if (t <= 0.0) return 0.0;
  const double tz = std::pow(t, -1.0 / p.zeta);
  return tz / t * std::exp(-tz) / p.sigma;
}

double gev_quantile(const GevParams& p, double u) {
  p.validate();
  if (!(u > 0.0 && u < 1.0)) throw DomainError("GEV quantile needs u in (0, 1)");
  const double y = -std::log(u);
  if (std::abs(p.zeta) < kGumbelThreshold) return p.mu - p.sigma * std::log(y);
  return p.mu + p.sigma * std::expm1(-p.zeta * std::log(y)) / p.zeta;
}

LMoments sample_l_moments(std::span<const double> samples) {
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double b0 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double j = static_cast<double>(i);  // zero-based rank
    b0 += x[i];
    b1 += x[i] * j / (n - 1.0);
    b2 += x[i] * j * (j - 1.0) / ((n - 1.0) * (n - 2.0));
  }
  b0 /= n;
  b1 /= n;
  b2 /= n;
  return {.l1 = b0, .l2 = 2.0 * b1 - b0, .l3 = 6.0 * b2 - 6.0 * b1 + b0};
}

GevParams fit_gev(std::span<const double> samples) {
  if (samples.size() < kMinFitSamples) throw FitError("GEV fit needs at least 30 samples");
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  if (*lo == *hi) throw FitError("GEV fit on a constant sample");

  const LMoments lm = sample_l_moments(samples);
  if (!(lm.l2 > 0.0)) throw FitError("non-positive sample L-scale");
  const double k = shape_for_tau3(lm.tau3());

  GevParams p;
  if (std::abs(k) < kGumbelThreshold) {
    p.sigma = lm.l2 / std::numbers::ln2;
    p.mu = lm.l1 - std::numbers::egamma * p.sigma;
    p.zeta = 0.0;
    return p;
  }
  const double gamma1k = std::tgamma(1.0 + k);
  p.sigma = lm.l2 * k / (-std::expm1(-k * std::numbers::ln2) * gamma1k);
  p.mu = lm.l1 - p.sigma * (1.0 - gamma1k) / k;
  p.zeta = -k;
  return p;
}

}  // namespace smiet::gev
