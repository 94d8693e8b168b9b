#pragma once

#include <span>
#include <vector>

namespace smiet::gev {

/// Generalized extreme value distribution,
/// F(x) = exp(-(1 + zeta (x - mu) / sigma)^(-1/zeta)), Gumbel at zeta = 0.
struct GevParams {
  double mu = 0.0;
  double sigma = 1.0;
  double zeta = 0.0;

  void validate() const;
  /// True where 1 + zeta (x - mu) / sigma > 0.
  bool in_support(double x) const;
};

double gev_cdf(const GevParams& p, double x);
double gev_pdf(const GevParams& p, double x);
/// Inverse CDF for u in (0, 1).
double gev_quantile(const GevParams& p, double u);

/// Sample L-moments l1, l2, l3 from unbiased probability-weighted moments.
struct LMoments {
  double l1 = 0.0;
  double l2 = 0.0;
  double l3 = 0.0;
  double tau3() const { return l3 / l2; }
};
LMoments sample_l_moments(std::span<const double> samples);

/// L-moment (PWM) fit. Needs >= 30 non-constant samples, else FitError.
GevParams fit_gev(std::span<const double> samples);

inline constexpr std::size_t kMinFitSamples = 30;

}  // namespace smiet::gev
