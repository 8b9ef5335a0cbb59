/* SPDX-License-Identifier: Apache-2.0 */

#ifndef UCDR_DOMAIN_HPP
#define UCDR_DOMAIN_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ucdr {

// Thrown by the validators below and by the file loaders when an object
// fails its invariants. `what()` carries the offending field and value.
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// One dispatchable generator. Costs are in abstract cost units, powers in
// MW, ramps in MW per time step, up/down times in whole time steps.
struct ThermalUnit {
  int id = 0;
  double fuel_cost = 0.0;     // cost per MWh produced
  double startup_cost = 0.0;  // cost per off->on transition
  double p_max = 0.0;
  double p_min = 0.0;
  double ramp_up = 0.0;
  double ramp_down = 0.0;
  int min_up = 1;
  int min_down = 1;
};

struct Fleet {
  std::vector<ThermalUnit> units;  // position defines the variable order

  int size() const { return static_cast<int>(units.size()); }
  const ThermalUnit& unit(int i) const { return units[static_cast<size_t>(i)]; }
  double total_p_max() const;
};

// Forecast series over the planning horizon plus the per-source forecast
// error magnitudes used by the chance constraint.
struct Scenario {
  int horizon = 0;          // T, number of time steps
  double step_hours = 1.0;  // length of one step
  std::vector<double> demand;
  std::vector<double> wind;
  std::vector<double> pv;
  double sigma_d = 0.0;
  double sigma_w = 0.0;
  double sigma_p = 0.0;
};

// Price menu for the demand response. `levels` must be strictly increasing
// and bracket grand mean `mean_price`.
struct Tariff {
  double mean_price = 0.0;      // reference price the daily mean may not exceed
  std::vector<double> levels;   // selectable prices, ascending
  double elasticity = 0.0;      // price elasticity of demand, <= 0

  int num_levels() const { return static_cast<int>(levels.size()); }
};

enum class DistributionKind : std::uint8_t { Normal, Laplace, Deterministic };

// Probability level and error model for the supply-demand balance. With
// Deterministic the balance holds against the plain forecast and alpha is
// ignored.
struct ChanceSpec {
  double alpha = 0.9;
  DistributionKind distribution = DistributionKind::Normal;
};

// Boundary conditions at the first time step, one entry per unit.
// `run_length` counts the steps the unit has already spent in its current
// state; a unit that has not yet completed its minimum up (down) time is
// forced to stay on (off) for the remainder.
struct InitialState {
  struct UnitState {
    bool committed = false;
    double output = 0.0;
    int run_length = 1;
  };
  std::vector<UnitState> units;

  // All units off, with the down-time requirement already served.
  static InitialState all_off(const Fleet& fleet);
};

// Constraint vocabulary shared by the problem builder, the MPS writer and
// the independent schedule validator.
enum class ConstraintKind : std::uint8_t {
  PriceSelection,      // exactly one tariff level per step
  MeanPriceCap,        // horizon mean of selected prices <= mean_price
  DemandConservation,  // total responsive demand >= total forecast demand
  Balance,             // supply covers responsive demand plus reserve offset
  CapacityLower,       // p >= p_min while committed
  CapacityUpper,       // p <= p_max while committed
  RampUp,
  RampDown,
  MinUp,
  MinDown,
  StartupLink,         // startup indicator dominates commitment increase
  VariableBound,       // used by the validator for bound/integrality checks
};

const char* constraint_kind_name(ConstraintKind kind);

// Throw validation_error naming the first violated invariant; otherwise
// return the argument unchanged. Both are idempotent.
const Fleet& validate_fleet(const Fleet& fleet);
const Scenario& validate_scenario(const Scenario& scenario);
const Tariff& validate_tariff(const Tariff& tariff);
const ChanceSpec& validate_chance(const ChanceSpec& chance);
const InitialState& validate_initial_state(const InitialState& init, const Fleet& fleet);

// Relative demand shift (d / d_forecast) caused by selecting price level
// `level_index` (1-based): (r_l / mean_price)^elasticity. Equals 1 when the
// level price is the mean price or the elasticity is zero.
double demand_factor(int level_index, const Tariff& tariff);

// Interpret per-unit ramp fields as fraction-of-capacity per step instead of
// MW per step. Off by default; returns a copy with ramps scaled by p_max.
Fleet ramps_as_capacity_fraction(const Fleet& fleet);

}  // namespace ucdr

#endif
