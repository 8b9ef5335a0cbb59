/* SPDX-License-Identifier: Apache-2.0 */

#include <cmath>

#include <doctest.h>

#include "ucdr/domain.hpp"
#include "ucdr/pipeline.hpp"

using namespace ucdr;

TEST_CASE("reference fleet passes validation") {
  const Fleet fleet = builtin_reference_fleet();
  REQUIRE(fleet.size() == 12);
  CHECK_NOTHROW(validate_fleet(fleet));
  CHECK(fleet.unit(7).fuel_cost == 7.1);
  CHECK(fleet.unit(7).startup_cost == 200.0);
  CHECK(fleet.total_p_max() == doctest::Approx(188.0));
}

TEST_CASE("fleet invariants reject bad units") {
  Fleet fleet = builtin_reference_fleet();

  SUBCASE("p_min above p_max") {
    fleet.units[0].p_min = 25.0;
    fleet.units[0].p_max = 20.0;
    CHECK_THROWS_AS(validate_fleet(fleet), validation_error);
  }
  SUBCASE("zero min up time") {
    fleet.units[3].min_up = 0;
    CHECK_THROWS_AS(validate_fleet(fleet), validation_error);
  }
  SUBCASE("zero ramp") {
    fleet.units[5].ramp_up = 0.0;
    CHECK_THROWS_AS(validate_fleet(fleet), validation_error);
  }
  SUBCASE("duplicate ids") {
    fleet.units[1].id = 1;
    CHECK_THROWS_AS(validate_fleet(fleet), validation_error);
  }
  SUBCASE("negative fuel cost") {
    fleet.units[2].fuel_cost = -1.0;
    CHECK_THROWS_AS(validate_fleet(fleet), validation_error);
  }
}

TEST_CASE("validation is idempotent") {
  const Fleet fleet = builtin_reference_fleet();
  const Fleet& once = validate_fleet(fleet);
  const Fleet& twice = validate_fleet(once);
  CHECK(&twice == &fleet);

  Scenario sc;
  sc.horizon = 24;
  sc.demand.assign(24, 100.0);
  sc.wind.assign(24, 10.0);
  sc.pv.assign(24, 5.0);
  sc.sigma_w = 3.0;
  sc.sigma_p = 3.0;
  const Scenario& v1 = validate_scenario(sc);
  const Scenario& v2 = validate_scenario(v1);
  CHECK(&v2 == &sc);
}

TEST_CASE("scenario invariants") {
  Scenario sc;
  sc.horizon = 24;
  sc.demand.assign(24, 100.0);
  sc.wind.assign(24, 10.0);
  sc.pv.assign(24, 5.0);
  sc.sigma_w = 3.0;
  sc.sigma_p = 3.0;
  CHECK_NOTHROW(validate_scenario(sc));

  SUBCASE("length mismatch is named") {
    sc.demand.resize(23);
    try {
      validate_scenario(sc);
      FAIL("expected validation_error");
    } catch (const validation_error& e) {
      CHECK(std::string(e.what()).find("demand") != std::string::npos);
    }
  }
  SUBCASE("negative entry is located") {
    sc.wind[5] = -1.0;
    try {
      validate_scenario(sc);
      FAIL("expected validation_error");
    } catch (const validation_error& e) {
      CHECK(std::string(e.what()).find("wind") != std::string::npos);
      CHECK(std::string(e.what()).find("6") != std::string::npos);
    }
  }
  SUBCASE("negative sigma") {
    sc.sigma_p = -0.1;
    CHECK_THROWS_AS(validate_scenario(sc), validation_error);
  }
}

TEST_CASE("tariff invariants") {
  CHECK_NOTHROW(validate_tariff(Tariff{10.0, {7.0, 8.5, 10.0, 11.5, 13.0}, 0.0}));
  CHECK_THROWS_AS(validate_tariff(Tariff{10.0, {}, 0.0}), validation_error);
  CHECK_THROWS_AS(validate_tariff(Tariff{10.0, {11.0, 12.0}, 0.0}), validation_error);
  CHECK_THROWS_AS(validate_tariff(Tariff{10.0, {8.0, 8.0, 12.0}, 0.0}), validation_error);
  CHECK_THROWS_AS(validate_tariff(Tariff{10.0, {8.0, 12.0}, 0.5}), validation_error);
}

TEST_CASE("demand factor matches the constant-elasticity curve") {
  const Tariff tariff{10.0, {8.0, 10.0, 12.0}, -0.30};

  SUBCASE("price at the mean gives 1") {
    CHECK(demand_factor(2, tariff) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("zero elasticity gives 1 at every level") {
    const Tariff flat{10.0, {8.0, 10.0, 12.0}, 0.0};
    for (int l = 1; l <= 3; ++l) CHECK(demand_factor(l, flat) == 1.0);
  }
  SUBCASE("ratio 1.2 at elasticity -0.3") {
    // direct evaluation of exp(-0.3 ln 1.2)
    const double expected = std::exp(-0.3 * std::log(1.2));
    CHECK(expected == doctest::Approx(0.94677248).epsilon(1e-7));
    CHECK(demand_factor(3, tariff) == doctest::Approx(expected).epsilon(1e-9));
  }
  SUBCASE("index out of range") {
    CHECK_THROWS_AS(demand_factor(0, tariff), std::out_of_range);
    CHECK_THROWS_AS(demand_factor(4, tariff), std::out_of_range);
  }
}

TEST_CASE("demand factor strictly decreases in the price under negative elasticity") {
  const Tariff tariff{10.0, {6.0, 8.0, 10.0, 12.0, 14.0}, -0.25};
  double prev = demand_factor(1, tariff);
  for (int l = 2; l <= 5; ++l) {
    const double current = demand_factor(l, tariff);
    CHECK(current < prev);
    prev = current;
  }
}

TEST_CASE("initial state validation") {
  const Fleet fleet = builtin_reference_fleet();
  InitialState init = InitialState::all_off(fleet);
  CHECK_NOTHROW(validate_initial_state(init, fleet));

  SUBCASE("committed output must respect the capacity band") {
    init.units[0].committed = true;
    init.units[0].output = 10.0;  // below p_min = 25
    CHECK_THROWS_AS(validate_initial_state(init, fleet), validation_error);
  }
  SUBCASE("decommitted output must be zero") {
    init.units[1].output = 5.0;
    CHECK_THROWS_AS(validate_initial_state(init, fleet), validation_error);
  }
  SUBCASE("run length at least one") {
    init.units[2].run_length = 0;
    CHECK_THROWS_AS(validate_initial_state(init, fleet), validation_error);
  }
}

TEST_CASE("ramp reinterpretation scales by capacity") {
  const Fleet fleet = builtin_reference_fleet();
  const Fleet scaled = ramps_as_capacity_fraction(fleet);
  CHECK(scaled.unit(0).ramp_up == doctest::Approx(0.5 * 50.0));
  CHECK(scaled.unit(4).ramp_down == doctest::Approx(5.0 * 6.0));
  CHECK(fleet.unit(0).ramp_up == 0.5);
}
