/* SPDX-License-Identifier: Apache-2.0 */

#include <cmath>

#include <doctest.h>

#include "ucdr/stochastics.hpp"

using namespace ucdr;

namespace {

// Independent normal CDF: adaptive Simpson quadrature of the density from
// far in the left tail.
double normal_pdf(double x, double mu, double sigma) {
  const double z = (x - mu) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * M_PI));
}

double simpson(double a, double b, double fa, double fm, double fb, double mu, double sigma,
               double whole, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = normal_pdf(lm, mu, sigma), frm = normal_pdf(rm, mu, sigma);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 1e-14)
    return left + right + (left + right - whole) / 15.0;
  return simpson(a, m, fa, flm, fm, mu, sigma, left, depth - 1) +
         simpson(m, b, fm, frm, fb, mu, sigma, right, depth - 1);
}

double normal_cdf_quadrature(double x, double mu, double sigma) {
  const double a = mu - 12.0 * sigma;
  if (x <= a) return 0.0;
  const double fa = normal_pdf(a, mu, sigma);
  const double fb = normal_pdf(x, mu, sigma);
  const double m = 0.5 * (a + x);
  const double fm = normal_pdf(m, mu, sigma);
  const double whole = (x - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(a, x, fa, fm, fb, mu, sigma, whole, 48);
}

double normal_quantile_bisection(double alpha, double mu, double sigma) {
  double lo = mu - 12.0 * sigma, hi = mu + 12.0 * sigma;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (normal_cdf_quadrature(mid, mu, sigma) < alpha)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("cdf at the mean is one half for both kinds") {
  CHECK(cdf(ErrorDistribution::normal(0.0, 1.0), 0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cdf(ErrorDistribution::laplace(0.0, 1.0), 0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cdf(ErrorDistribution::normal(2.5, 3.0), 2.5) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("laplace cdf closed form at one sigma") {
  // 1 - 0.5 exp(-sqrt(2)) evaluated directly
  const double expected = 1.0 - 0.5 * std::exp(-std::sqrt(2.0));
  CHECK(expected == doctest::Approx(0.878441).epsilon(1e-6));
  CHECK(cdf(ErrorDistribution::laplace(0.0, 1.0), 1.0) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("normal cdf against quadrature") {
  const double expected = normal_cdf_quadrature(1.0, 0.0, 1.0);
  CHECK(expected == doctest::Approx(0.841345).epsilon(1e-6));
  CHECK(cdf(ErrorDistribution::normal(0.0, 1.0), 1.0) ==
        doctest::Approx(expected).epsilon(1e-9));
  for (double x : {-2.0, -0.5, 0.3, 2.7}) {
    CHECK(cdf(ErrorDistribution::normal(1.0, 2.0), x) ==
          doctest::Approx(normal_cdf_quadrature(x, 1.0, 2.0)).epsilon(1e-9));
  }
}

TEST_CASE("cdf is strictly increasing") {
  for (auto kind : {DistributionKind::Normal, DistributionKind::Laplace}) {
    const ErrorDistribution dist{kind, 0.0, 1.5};
    double prev = 0.0;
    for (double x = -6.0; x <= 6.0; x += 0.25) {
      const double p = cdf(dist, x);
      CHECK(p > prev);
      prev = p;
    }
    CHECK(prev < 1.0);
  }
}

TEST_CASE("quantile median is the mean") {
  CHECK(quantile(ErrorDistribution::normal(0.0, 1.0), 0.5) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(quantile(ErrorDistribution::laplace(0.0, 1.0), 0.5) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("normal quantile against bisection on quadrature") {
  const double expected = normal_quantile_bisection(0.90, 0.0, 1.0);
  CHECK(expected == doctest::Approx(1.281552).epsilon(1e-6));
  CHECK(quantile(ErrorDistribution::normal(0.0, 1.0), 0.90) ==
        doctest::Approx(expected).epsilon(1e-8));
}

TEST_CASE("laplace quantile closed form") {
  // b ln 5 with b = 1/sqrt(2), from the inverse of the Laplace CDF
  const double expected = std::log(5.0) / std::sqrt(2.0);
  CHECK(expected == doctest::Approx(1.1380443).epsilon(1e-6));
  CHECK(quantile(ErrorDistribution::laplace(0.0, 1.0), 0.90) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("quantile rejects alpha outside (0,1)") {
  CHECK_THROWS_AS(quantile(ErrorDistribution::normal(0.0, 1.0), 0.0), std::domain_error);
  CHECK_THROWS_AS(quantile(ErrorDistribution::normal(0.0, 1.0), 1.0), std::domain_error);
  CHECK_THROWS_AS(quantile(ErrorDistribution::laplace(0.0, 1.0), -0.2), std::domain_error);
}

TEST_CASE("cdf-quantile round trip on the alpha grid") {
  for (auto kind : {DistributionKind::Normal, DistributionKind::Laplace}) {
    const ErrorDistribution dist{kind, 0.0, 1.0};
    for (double alpha = 0.5; alpha < 0.9995; alpha += 0.1) {
      CHECK(cdf(dist, quantile(dist, alpha)) == doctest::Approx(alpha).epsilon(1e-9));
    }
    CHECK(cdf(dist, quantile(dist, 0.999)) == doctest::Approx(0.999).epsilon(1e-9));
  }
}

TEST_CASE("laplace tail overtakes the normal tail") {
  const ErrorDistribution normal = ErrorDistribution::normal(0.0, 1.0);
  const ErrorDistribution laplace = ErrorDistribution::laplace(0.0, 1.0);
  // crossover: lighter Laplace quantile at 0.90, heavier at 0.97 and beyond
  CHECK(quantile(laplace, 0.90) < quantile(normal, 0.90));
  for (double alpha : {0.97, 0.99, 0.999})
    CHECK(quantile(laplace, alpha) > quantile(normal, alpha));
}

TEST_CASE("combined sigma is the root sum of squares") {
  CHECK(combined_sigma(0.0, 0.0, 0.0) == 0.0);
  CHECK(combined_sigma(0.0, 3.0, 3.0) == doctest::Approx(4.242641).epsilon(1e-6));
  CHECK(combined_sigma(0.0, 9.0, 9.0) == doctest::Approx(12.727922).epsilon(1e-6));
  CHECK(combined_sigma(1.0, 2.0, 2.0) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("reserve offset") {
  const ChanceSpec normal{0.90, DistributionKind::Normal};

  SUBCASE("deterministic is zero regardless of sigma") {
    const ChanceSpec det{0.5, DistributionKind::Deterministic};
    CHECK(reserve_offset(det, SigmaTriple{5.0, 7.0, 9.0}) == 0.0);
  }
  SUBCASE("reference sigma case") {
    CHECK(reserve_offset(normal, SigmaTriple{0.0, 3.0, 3.0}) ==
          doctest::Approx(5.437).epsilon(0.002));
  }
  SUBCASE("doubled sigma case") {
    CHECK(reserve_offset(normal, SigmaTriple{0.0, 6.0, 6.0}) ==
          doctest::Approx(10.874).epsilon(0.001));
  }
  SUBCASE("zero sigma gives zero offset") {
    CHECK(reserve_offset(normal, SigmaTriple{0.0, 0.0, 0.0}) == 0.0);
  }
  SUBCASE("linear in the combined sigma at fixed alpha") {
    const double base = reserve_offset(normal, SigmaTriple{0.0, 3.0, 3.0});
    const double tripled = reserve_offset(normal, SigmaTriple{0.0, 9.0, 9.0});
    CHECK(tripled == doctest::Approx(3.0 * base).epsilon(1e-12));
  }
  SUBCASE("non-decreasing in alpha at fixed sigma") {
    double prev = 0.0;
    for (double alpha = 0.5; alpha < 0.999; alpha += 0.05) {
      const double offset =
          reserve_offset(ChanceSpec{alpha, DistributionKind::Normal}, SigmaTriple{0.0, 3.0, 3.0});
      CHECK(offset >= prev);
      prev = offset;
    }
  }
  SUBCASE("alpha domain is enforced") {
    CHECK_THROWS_AS(reserve_offset(ChanceSpec{1.0, DistributionKind::Normal},
                                   SigmaTriple{0.0, 3.0, 3.0}),
                    std::domain_error);
  }
}

TEST_CASE("laplace scale relation") {
  const ErrorDistribution dist = ErrorDistribution::laplace(0.0, 2.0);
  CHECK(std::sqrt(2.0) * dist.laplace_b() == doctest::Approx(dist.sigma).epsilon(1e-15));
}
