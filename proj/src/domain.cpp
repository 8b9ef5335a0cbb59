/* SPDX-License-Identifier: Apache-2.0 */

#include "ucdr/domain.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace ucdr {

double Fleet::total_p_max() const {
  double s = 0.0;
  for (const auto& u : units) s += u.p_max;
  return s;
}

InitialState InitialState::all_off(const Fleet& fleet) {
  InitialState init;
  init.units.resize(static_cast<size_t>(fleet.size()));
  for (int i = 0; i < fleet.size(); ++i) {
    init.units[static_cast<size_t>(i)].committed = false;
    init.units[static_cast<size_t>(i)].output = 0.0;
    init.units[static_cast<size_t>(i)].run_length = fleet.unit(i).min_down;
  }
  return init;
}

const char* constraint_kind_name(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::PriceSelection: return "price_selection";
    case ConstraintKind::MeanPriceCap: return "mean_price_cap";
    case ConstraintKind::DemandConservation: return "demand_conservation";
    case ConstraintKind::Balance: return "balance";
    case ConstraintKind::CapacityLower: return "capacity_lower";
    case ConstraintKind::CapacityUpper: return "capacity_upper";
    case ConstraintKind::RampUp: return "ramp_up";
    case ConstraintKind::RampDown: return "ramp_down";
    case ConstraintKind::MinUp: return "min_up";
    case ConstraintKind::MinDown: return "min_down";
    case ConstraintKind::StartupLink: return "startup_link";
    case ConstraintKind::VariableBound: return "variable_bound";
  }
  return "unknown";
}

namespace {

[[noreturn]] void invalid_unit(int id, const std::string& reason) {
  std::ostringstream os;
  os << "invalid unit " << id << ": " << reason;
  throw validation_error(os.str());
}

void check_series(const std::vector<double>& series, const char* name, int horizon) {
  if (static_cast<int>(series.size()) != horizon) {
    std::ostringstream os;
    os << "series '" << name << "' has length " << series.size() << ", expected " << horizon;
    throw validation_error(os.str());
  }
  for (size_t k = 0; k < series.size(); ++k) {
    if (!(series[k] >= 0.0) || !std::isfinite(series[k])) {
      std::ostringstream os;
      os << "series '" << name << "' has negative or non-finite value " << series[k]
         << " at step " << (k + 1);
      throw validation_error(os.str());
    }
  }
}

}  // namespace

const Fleet& validate_fleet(const Fleet& fleet) {
  if (fleet.units.empty()) throw validation_error("fleet has no units");
  std::set<int> ids;
  for (const auto& u : fleet.units) {
    if (!ids.insert(u.id).second) invalid_unit(u.id, "duplicate id");
    if (!(u.p_min >= 0.0)) invalid_unit(u.id, "p_min must be >= 0");
    if (!(u.p_min <= u.p_max)) invalid_unit(u.id, "p_min must be <= p_max");
    if (!(u.ramp_up > 0.0)) invalid_unit(u.id, "ramp_up must be > 0");
    if (!(u.ramp_down > 0.0)) invalid_unit(u.id, "ramp_down must be > 0");
    if (u.min_up < 1) invalid_unit(u.id, "min_up must be >= 1");
    if (u.min_down < 1) invalid_unit(u.id, "min_down must be >= 1");
    if (!(u.fuel_cost >= 0.0)) invalid_unit(u.id, "fuel_cost must be >= 0");
    if (!(u.startup_cost >= 0.0)) invalid_unit(u.id, "startup_cost must be >= 0");
  }
  return fleet;
}

const Scenario& validate_scenario(const Scenario& scenario) {
  if (scenario.horizon < 1) throw validation_error("horizon must be >= 1");
  if (!(scenario.step_hours > 0.0)) throw validation_error("step_hours must be > 0");
  check_series(scenario.demand, "demand", scenario.horizon);
  check_series(scenario.wind, "wind", scenario.horizon);
  check_series(scenario.pv, "pv", scenario.horizon);
  if (!(scenario.sigma_d >= 0.0)) throw validation_error("sigma_d must be >= 0");
  if (!(scenario.sigma_w >= 0.0)) throw validation_error("sigma_w must be >= 0");
  if (!(scenario.sigma_p >= 0.0)) throw validation_error("sigma_p must be >= 0");
  return scenario;
}

const Tariff& validate_tariff(const Tariff& tariff) {
  if (tariff.levels.empty()) throw validation_error("tariff needs at least one price level");
  for (size_t l = 0; l < tariff.levels.size(); ++l) {
    if (!(tariff.levels[l] > 0.0)) throw validation_error("price levels must be positive");
    if (l > 0 && !(tariff.levels[l] > tariff.levels[l - 1]))
      throw validation_error("price levels must be strictly increasing");
  }
  if (!(tariff.levels.front() <= tariff.mean_price && tariff.mean_price <= tariff.levels.back()))
    throw validation_error("mean_price must lie within [min level, max level]");
  if (!(tariff.elasticity <= 0.0)) throw validation_error("elasticity must be <= 0");
  return tariff;
}

const ChanceSpec& validate_chance(const ChanceSpec& chance) {
  if (chance.distribution != DistributionKind::Deterministic) {
    if (!(chance.alpha > 0.0 && chance.alpha < 1.0))
      throw validation_error("alpha must lie in (0, 1)");
  }
  return chance;
}

const InitialState& validate_initial_state(const InitialState& init, const Fleet& fleet) {
  if (static_cast<int>(init.units.size()) != fleet.size())
    throw validation_error("initial state must have one entry per unit");
  for (int i = 0; i < fleet.size(); ++i) {
    const auto& s = init.units[static_cast<size_t>(i)];
    const auto& u = fleet.unit(i);
    if (s.run_length < 1) invalid_unit(u.id, "initial run_length must be >= 1");
    if (s.committed) {
      if (!(s.output >= u.p_min && s.output <= u.p_max))
        invalid_unit(u.id, "initial output must lie in [p_min, p_max] when committed");
    } else if (s.output != 0.0) {
      invalid_unit(u.id, "initial output must be 0 when decommitted");
    }
  }
  return init;
}

double demand_factor(int level_index, const Tariff& tariff) {
  if (level_index < 1 || level_index > tariff.num_levels())
    throw std::out_of_range("tariff level index out of range");
  const double ratio = tariff.levels[static_cast<size_t>(level_index - 1)] / tariff.mean_price;
  if (tariff.elasticity == 0.0 || ratio == 1.0) return 1.0;
  return std::pow(ratio, tariff.elasticity);
}

Fleet ramps_as_capacity_fraction(const Fleet& fleet) {
  Fleet scaled = fleet;
  for (auto& u : scaled.units) {
    u.ramp_up *= u.p_max;
    u.ramp_down *= u.p_max;
  }
  return scaled;
}

}  // namespace ucdr
