#include <cmath>

#include "doctest.h"
#include "hybridgrid/devices.hpp"
#include "hybridgrid/error.hpp"
#include "hybridgrid/rng.hpp"

using namespace hybridgrid;

TEST_CASE("pv efficiency and power") {
  const PvSpec pv{};
  CHECK(pv_efficiency(0.0, 25.0, pv) == doctest::Approx(0.154));
  // 0.154 * (1 - 0.9 * 0.0045 * (0.8 / 0.8) * 25.7 + 0.0045 * 5)
  const double eta = 0.154 * (1.0 - 0.104085 + 0.0225);
  CHECK(pv_efficiency(0.8, 20.0, pv) == doctest::Approx(eta));
  CHECK(pv_efficiency(0.8, 20.0, pv) == doctest::Approx(0.14144).epsilon(1e-4));
  CHECK(pv_efficiency(1.2, 250.0, pv) == 0.0);

  CHECK(pv_power(15, 0.0, 20.0, pv) == 0.0);
  CHECK(pv_power(0, 0.8, 20.0, pv) == 0.0);
  CHECK(pv_power(15, 0.8, 20.0, pv) == doctest::Approx(15 * eta * 1.4602 * 0.8));
  CHECK(pv_power(15, 0.8, 20.0, pv) == doctest::Approx(2.478).epsilon(1e-3));
  CHECK(pv_power(30, 0.8, 20.0, pv) == doctest::Approx(2.0 * pv_power(15, 0.8, 20.0, pv)));
  // linear in irradiance only at the reference temperature of the second term
  CHECK(pv_power(10, 0.0, 25.0, pv) == 0.0);
}

TEST_CASE("hub wind speed") {
  WindSpec w{};
  CHECK(hub_wind_speed(3.19, 14.5, w) == doctest::Approx(3.19));
  CHECK(hub_wind_speed(3.19, 1.0, w) == doctest::Approx(3.19 * std::pow(14.5, 0.14)));
  CHECK(hub_wind_speed(3.19, 1.0, w) == doctest::Approx(4.639).epsilon(1e-3));
  CHECK(hub_wind_speed(0.0, 1.0, w) == 0.0);
}

TEST_CASE("wt curve coefficients") {
  const WindSpec w{};
  const auto c = wt_curve_coefficients(w);
  CHECK(c.a == doctest::Approx(0.12244).epsilon(1e-3));
  CHECK(c.b == doctest::Approx(-0.08590).epsilon(1e-3));
  CHECK(c.c == doctest::Approx(0.015062).epsilon(1e-3));

  // Independent oracle: the quadratic through (v_c, 0) and (v_r, 1) whose
  // vertex-free part matches the cubic law at the midpoint speed.
  const double vc = 2.8, vr = 11.0;
  const double vm = 0.5 * (vc + vr);
  const double pm = std::pow(vm / vr, 3.0);
  // solve [1 vc vc^2; 1 vr vr^2; 1 vm vm^2] [a b c]^T = [0 1 pm]^T by Cramer
  const auto det3 = [](double a1, double a2, double a3, double b1, double b2, double b3, double c1, double c2,
                       double c3) {
    return a1 * (b2 * c3 - b3 * c2) - a2 * (b1 * c3 - b3 * c1) + a3 * (b1 * c2 - b2 * c1);
  };
  const double d = det3(1, vc, vc * vc, 1, vr, vr * vr, 1, vm, vm * vm);
  const double a = det3(0, vc, vc * vc, 1, vr, vr * vr, pm, vm, vm * vm) / d;
  const double b = det3(1, 0, vc * vc, 1, 1, vr * vr, 1, pm, vm * vm) / d;
  const double cc = det3(1, vc, 0, 1, vr, 1, 1, vm, pm) / d;
  CHECK(c.a == doctest::Approx(a).epsilon(1e-9));
  CHECK(c.b == doctest::Approx(b).epsilon(1e-9));
  CHECK(c.c == doctest::Approx(cc).epsilon(1e-9));

  WindSpec printed = w;
  printed.printed_coefficients = true;
  // the printed denominators miss P(v_r) = 1
  CHECK(std::abs(wt_curve_coefficients(printed)(vr) - 1.0) > 0.1);
}

TEST_CASE("wt curve boundary conditions hold for random specs") {
  Engine eng(99);
  for (int i = 0; i < 200; ++i) {
    WindSpec w{};
    w.cut_in = uniform(eng, 1.0, 5.0);
    w.rated_speed = w.cut_in + uniform(eng, 1.0, 12.0);
    w.cut_out = w.rated_speed + uniform(eng, 1.0, 15.0);
    const auto c = wt_curve_coefficients(w);
    CHECK(std::abs(c(w.cut_in)) < 1e-9);
    CHECK(std::abs(c(w.rated_speed) - 1.0) < 1e-9);
    CHECK(wt_power(1, w.cut_in, w) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(wt_power(1, w.rated_speed, w) == doctest::Approx(w.rated_power));
  }
}

TEST_CASE("wt power regions") {
  const WindSpec w{};
  CHECK(wt_power(4, 1.0, w) == 0.0);
  CHECK(wt_power(4, 15.0, w) == doctest::Approx(14.0));
  CHECK(wt_power(4, 25.0, w) == 0.0);
  for (double v = 0.0; v < 30.0; v += 0.25) CHECK(wt_power(3, v, w) >= 0.0);
}

TEST_CASE("battery step") {
  BatterySpec b = BatterySpec::lithium_ion();
  b.self_discharge_monthly = 0.0;
  CHECK(battery_step(0.6, 0.0, 1.0, 100.0, b) == 0.6);
  CHECK(battery_step(0.9, 3.68, 1.0, 100.0, b) == doctest::Approx(0.86688));
  CHECK(battery_step(0.5, -5.0, 1.0, 100.0, b) == doctest::Approx(0.545));
  // eta multiplies the terminal power in both directions, so equal DC
  // energy in and out is SOC-neutral; a discharge that delivers only
  // eta^2 of the charged energy leaves the bank above where it started.
  const double charged = battery_step(0.5, -5.0, 1.0, 100.0, b);
  CHECK(battery_step(charged, 5.0, 1.0, 100.0, b) == doctest::Approx(0.5));
  CHECK(battery_step(charged, 5.0 * 0.81, 1.0, 100.0, b) > 0.5);

  BatterySpec leaky = BatterySpec::lithium_ion();
  CHECK(battery_leak(0.5, leaky) == doctest::Approx(0.5 * (1.0 - 0.075 / 730.0)));
  CHECK(battery_leak(leaky.soc_min, leaky) == leaky.soc_min);
  CHECK(battery_leak(leaky.soc_min + 1e-7, leaky) >= leaky.soc_min);
}

TEST_CASE("battery capacity fade") {
  const BatterySpec b = BatterySpec::lithium_ion();
  CHECK(battery_capacity(100.0, 0.0, b) == 100.0);
  CHECK(battery_capacity(100.0, 1000.0, b) == doctest::Approx(94.5));
  CHECK(battery_capacity(100.0, 1e6, b) == doctest::Approx(70.0));
}

TEST_CASE("battery power limit") {
  BatterySpec b = BatterySpec::lithium_ion();
  CHECK(b.power_limit(13.5) == doctest::Approx(3.68));
  CHECK(b.power_limit(27.0) == doctest::Approx(7.36));
  b.power_mode = BatteryPowerMode::Fixed;
  CHECK(b.power_limit(27.0) == doctest::Approx(3.68));
}

TEST_CASE("diesel fuel") {
  const GeneratorSpec g = GeneratorSpec::diesel();
  CHECK(de_fuel_liters(16.0, g) == doctest::Approx(5.2392));
  CHECK(de_fuel_liters(4.8, g) == doctest::Approx(2.484));
  CHECK(de_fuel_liters(0.0, g) == 0.0);
  CHECK_THROWS_AS(de_fuel_liters(16.5, g), DomainError);
  // affine with intercept beta * P_r while online
  const double slope = (de_fuel_liters(10.0, g) - de_fuel_liters(5.0, g)) / 5.0;
  CHECK(slope == doctest::Approx(0.246));
  CHECK(de_fuel_liters(5.0, g) - 5.0 * slope == doctest::Approx(0.08145 * 16.0));

  CHECK(de_fuel_cost(3.78541, 3.20) == doctest::Approx(3.20));
  CHECK(de_fuel_cost(5.2392, 3.20) == doctest::Approx(4.429).epsilon(1e-3));
  CHECK(de_fuel_cost(0.0, 3.20) == 0.0);
}

TEST_CASE("microturbine fuel") {
  GeneratorSpec g = GeneratorSpec::microturbine();
  g.rated_power = 61.0;
  CHECK(mt_fuel_mmbtu(61.0, g) == doctest::Approx(0.84));
  CHECK(mt_fuel_mmbtu(0.0, g) == 0.0);
  CHECK(mt_fuel_mmbtu(16.0, g) == doctest::Approx(0.2203).epsilon(1e-3));
  g.rated_power = 16.0;
  CHECK_THROWS_AS(mt_fuel_mmbtu(17.0, g), DomainError);
  CHECK(generator_fuel_cost(16.0, g) == doctest::Approx(2.19 * 0.84 / 61.0 * 16.0));
}
