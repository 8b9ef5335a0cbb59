/* SPDX-License-Identifier: Apache-2.0 */

#include "ucdr/scenario_gen.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ucdr {

namespace {

// Hourly demand profile as a fraction of the daily peak: night trough around
// 55%, midday peak aligned with PV, softer evening shoulder. The early-day
// values stay low so a cold fleet can follow the curve.
constexpr double kDemandShape[24] = {
    0.56, 0.55, 0.55, 0.56, 0.58, 0.62, 0.70, 0.78, 0.85, 0.92, 0.97, 1.00,
    1.00, 0.97, 0.93, 0.90, 0.87, 0.85, 0.84, 0.82, 0.77, 0.70, 0.63, 0.58};

// Uniform double in [0, 1) straight from the engine bits; identical streams
// on every platform, unlike std::uniform_real_distribution.
double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double next_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * next_unit(rng);
}

}  // namespace

Scenario generate_scenario(const ScenarioSpec& spec) {
  if (spec.horizon < 1) throw validation_error("horizon must be >= 1");
  if (!(spec.step_hours > 0.0)) throw validation_error("step_hours must be > 0");
  if (!(spec.peak_demand >= 0.0)) throw validation_error("peak_demand must be >= 0");
  if (!(spec.pv_capacity >= 0.0 && spec.wind_capacity >= 0.0))
    throw validation_error("capacities must be >= 0");
  if (!(spec.sigma_d >= 0.0 && spec.sigma_w >= 0.0 && spec.sigma_p >= 0.0))
    throw validation_error("sigmas must be >= 0");
  if (spec.wind_drop) {
    const auto& drop = *spec.wind_drop;
    if (drop.start_hour < 1 || drop.end_hour > spec.horizon || drop.start_hour > drop.end_hour)
      throw validation_error("wind drop window must lie within the horizon");
    if (!(drop.residual >= 0.0 && drop.residual <= 1.0))
      throw validation_error("wind drop residual must lie in [0, 1]");
  }

  const int T = spec.horizon;
  std::mt19937_64 rng(spec.seed);
  Scenario scenario;
  scenario.horizon = T;
  scenario.step_hours = spec.step_hours;
  scenario.sigma_d = spec.sigma_d;
  scenario.sigma_w = spec.sigma_w;
  scenario.sigma_p = spec.sigma_p;

  // Demand: shape with +-2% jitter, rescaled so the maximum hits the peak.
  scenario.demand.resize(static_cast<size_t>(T));
  double shape_max = 0.0;
  for (int t = 0; t < T; ++t) {
    const double base = kDemandShape[t % 24];
    scenario.demand[static_cast<size_t>(t)] = base * (1.0 + next_in(rng, -0.02, 0.02));
    shape_max = std::max(shape_max, scenario.demand[static_cast<size_t>(t)]);
  }
  if (shape_max > 0.0)
    for (double& d : scenario.demand) d *= spec.peak_demand / shape_max;

  // PV: daylight bell with +-5% jitter, rescaled so the midday maximum hits
  // the installed capacity; zero at night.
  scenario.pv.assign(static_cast<size_t>(T), 0.0);
  double pv_max = 0.0;
  for (int t = 0; t < T; ++t) {
    const int hour = t % 24 + 1;
    const double jitter = 1.0 + next_in(rng, -0.05, 0.05);
    if (hour >= 7 && hour <= 18) {
      const double arg = M_PI * (static_cast<double>(hour) - 6.5) / 12.0;
      const double bell = std::sin(arg) * std::sin(arg);
      scenario.pv[static_cast<size_t>(t)] = bell * jitter;
      pv_max = std::max(pv_max, scenario.pv[static_cast<size_t>(t)]);
    }
  }
  if (pv_max > 0.0)
    for (double& v : scenario.pv) v *= spec.pv_capacity / pv_max;

  // Wind: clamped random walk inside [0.2, 0.9] of capacity.
  scenario.wind.resize(static_cast<size_t>(T));
  double level = next_in(rng, 0.3, 0.8);
  for (int t = 0; t < T; ++t) {
    scenario.wind[static_cast<size_t>(t)] = level * spec.wind_capacity;
    level = std::clamp(level + next_in(rng, -0.12, 0.12), 0.2, 0.9);
  }
  if (spec.wind_drop)
    for (int t = spec.wind_drop->start_hour; t <= spec.wind_drop->end_hour; ++t)
      scenario.wind[static_cast<size_t>(t - 1)] *= spec.wind_drop->residual;

  validate_scenario(scenario);
  return scenario;
}

}  // namespace ucdr
