#pragma once

#include <functional>
#include <span>
#include <vector>

namespace smiet::numerics {

/// exp(a) * erfc(x) without intermediate overflow/underflow for large a, x.
double exp_times_erfc(double a, double x);

/// Scaled complementary error function exp(x^2) erfc(x).
double erfcx(double x);

/// Inverse of erfc on (0, 2) by bisection. Throws DomainError outside (0, 2).
double erfc_inverse(double y);

// Descriptive statistics over samples (copied where ordering is needed).
double mean(std::span<const double> xs);
double variance(std::span<const double> xs);  // unbiased, n - 1
double stddev(std::span<const double> xs);
double coefficient_of_variation(std::span<const double> xs);
/// Linear-interpolated quantile (Hyndman-Fan type 7), q in [0, 1].
double quantile(std::span<const double> xs, double q);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> xs, std::span<const double> ys);

/// One-sample Kolmogorov-Smirnov statistic sup |F_n - F|. Ties in the sample
/// are handled by evaluating the empirical CDF on both sides of each jump.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Asymptotic KS critical value c(alpha)/sqrt(n), c(alpha) = sqrt(-ln(alpha/2)/2).
double ks_critical_value(std::size_t n, double alpha);

}  // namespace smiet::numerics
