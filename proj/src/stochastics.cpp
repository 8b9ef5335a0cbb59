/* SPDX-License-Identifier: Apache-2.0 */

#include "ucdr/stochastics.hpp"

#include <cmath>
#include <stdexcept>

namespace ucdr {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// Inverse standard normal CDF, Acklam's rational approximation. Relative
// error below 1.15e-9 over (0, 1); callers refine with one Newton step.
double inverse_normal_seed(double p) {
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  const double q = std::sqrt(-2.0 * std::log(1.0 - p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

double standard_normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

double standard_normal_cdf(double x) { return 0.5 * (1.0 + std::erf(x / kSqrt2)); }

}  // namespace

double ErrorDistribution::laplace_b() const { return sigma / kSqrt2; }

ErrorDistribution ErrorDistribution::normal(double mean, double sigma) {
  return ErrorDistribution{DistributionKind::Normal, mean, sigma};
}

ErrorDistribution ErrorDistribution::laplace(double mean, double sigma) {
  return ErrorDistribution{DistributionKind::Laplace, mean, sigma};
}

double cdf(const ErrorDistribution& dist, double x) {
  if (!(dist.sigma > 0.0)) throw std::domain_error("sigma must be > 0");
  const double z = x - dist.mean;
  switch (dist.kind) {
    case DistributionKind::Normal:
      return standard_normal_cdf(z / dist.sigma);
    case DistributionKind::Laplace: {
      const double b = dist.laplace_b();
      const double sgn = z >= 0.0 ? 1.0 : -1.0;
      return 0.5 * (1.0 + sgn * (1.0 - std::exp(-std::abs(z) / b)));
    }
    case DistributionKind::Deterministic:
      break;
  }
  throw std::domain_error("cdf undefined for deterministic kind");
}

double quantile(const ErrorDistribution& dist, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");
  if (!(dist.sigma > 0.0)) throw std::domain_error("sigma must be > 0");
  switch (dist.kind) {
    case DistributionKind::Normal: {
      double z = inverse_normal_seed(alpha);
      // One Newton step against the CDF pins the seed to ~1e-15.
      const double f = standard_normal_cdf(z) - alpha;
      const double df = standard_normal_pdf(z);
      if (df > 0.0) z -= f / df;
      return dist.mean + dist.sigma * z;
    }
    case DistributionKind::Laplace: {
      const double b = dist.laplace_b();
      if (alpha >= 0.5) return dist.mean - b * std::log(2.0 * (1.0 - alpha));
      return dist.mean + b * std::log(2.0 * alpha);
    }
    case DistributionKind::Deterministic:
      break;
  }
  throw std::domain_error("quantile undefined for deterministic kind");
}

double combined_sigma(double sigma_d, double sigma_w, double sigma_p) {
  return std::sqrt(sigma_d * sigma_d + sigma_w * sigma_w + sigma_p * sigma_p);
}

double reserve_offset(const ChanceSpec& chance, const SigmaTriple& sigmas) {
  if (chance.distribution == DistributionKind::Deterministic) return 0.0;
  if (!(chance.alpha > 0.0 && chance.alpha < 1.0))
    throw std::domain_error("alpha must lie in (0, 1)");
  const double total = combined_sigma(sigmas.sigma_d, sigmas.sigma_w, sigmas.sigma_p);
  if (total == 0.0) return 0.0;
  ErrorDistribution dist{chance.distribution, 0.0, total};
  return quantile(dist, chance.alpha);
}

}  // namespace ucdr
