/* SPDX-License-Identifier: Apache-2.0 */

#ifndef UCDR_SCENARIO_GEN_HPP
#define UCDR_SCENARIO_GEN_HPP

#include <cstdint>
#include <optional>

#include "ucdr/domain.hpp"

namespace ucdr {

// Seeded synthetic day: double-peaked demand, daylight-bell PV, smooth wind
// noise, optional evening wind collapse. Deterministic given the spec.
struct ScenarioSpec {
  std::uint64_t seed = 1;
  int horizon = 24;
  double step_hours = 1.0;
  double peak_demand = 170.0;
  double pv_capacity = 30.0;
  double wind_capacity = 30.0;
  double sigma_d = 0.0;
  double sigma_w = 3.0;
  double sigma_p = 3.0;

  struct WindDrop {
    int start_hour = 17;  // 1-based, inclusive
    int end_hour = 20;    // inclusive
    double residual = 0.1;
  };
  std::optional<WindDrop> wind_drop;
};

Scenario generate_scenario(const ScenarioSpec& spec);

}  // namespace ucdr

#endif
