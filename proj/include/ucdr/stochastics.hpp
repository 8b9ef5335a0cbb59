/* SPDX-License-Identifier: Apache-2.0 */

#ifndef UCDR_STOCHASTICS_HPP
#define UCDR_STOCHASTICS_HPP

#include "ucdr/domain.hpp"

namespace ucdr {

// Forecast-error model. The Laplace scale parameter is tied to the standard
// deviation by sigma = sqrt(2) * b.
struct ErrorDistribution {
  DistributionKind kind = DistributionKind::Normal;
  double mean = 0.0;
  double sigma = 1.0;

  double laplace_b() const;
  static ErrorDistribution normal(double mean, double sigma);
  static ErrorDistribution laplace(double mean, double sigma);
};

// Cumulative distribution function. Strictly increasing, 0.5 at the mean.
double cdf(const ErrorDistribution& dist, double x);

// Inverse of cdf. The normal branch uses a rational approximation sharpened
// by one Newton step against cdf; the Laplace branch is closed form.
// Throws std::domain_error for alpha outside (0, 1).
double quantile(const ErrorDistribution& dist, double alpha);

// Root sum of squares of the per-source forecast errors.
double combined_sigma(double sigma_d, double sigma_w, double sigma_p);

struct SigmaTriple {
  double sigma_d = 0.0;
  double sigma_w = 0.0;
  double sigma_p = 0.0;
};

// MW the supply must exceed the responsive demand by so the balance holds
// with probability alpha: quantile(alpha) of the zero-mean combined error.
// Zero under Deterministic.
double reserve_offset(const ChanceSpec& chance, const SigmaTriple& sigmas);

inline double reserve_offset(const ChanceSpec& chance, const Scenario& scenario) {
  return reserve_offset(chance, SigmaTriple{scenario.sigma_d, scenario.sigma_w, scenario.sigma_p});
}

}  // namespace ucdr

#endif
