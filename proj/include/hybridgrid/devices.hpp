#pragma once

#include "hybridgrid/system.hpp"

namespace hybridgrid {

/// PV conversion efficiency at irradiance `irr` (kW/m^2) and ambient
/// temperature `temp_amb` (deg C), clamped below at zero.
double pv_efficiency(double irr, double temp_amb, const PvSpec& spec);

/// DC output of `n_modules` modules (fractional counts allowed for
/// capacity-mode designs), kW.
double pv_power(double n_modules, double irr, double temp_amb, const PvSpec& spec);

/// Power-law extrapolation of the reference-height wind speed to hub height.
double hub_wind_speed(double v_ref, double ref_height, const WindSpec& spec);

struct PowerCurveCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double operator()(double v) const { return a + b * v + c * v * v; }
};

/// Quadratic-region coefficients of the turbine power curve, normalized to
/// rated power. The default form meets P(v_c) = 0 and P(v_r) = 1 exactly.
PowerCurveCoefficients wt_curve_coefficients(const WindSpec& spec);

/// AC output of `n_turbines` turbines at hub speed `v_hub`, kW.
double wt_power(double n_turbines, double v_hub, const WindSpec& spec);

/// One SOC update. `p_bs` is DC power at the battery terminals, positive
/// when discharging, over `dt` hours, against current capacity `capacity`
/// in kWh. Bounds are not enforced here.
double battery_step(double soc, double p_bs, double dt, double capacity, const BatterySpec& spec);

/// One hour of self-discharge. The leak stops at soc_min, so an idle bank
/// never leaves its operating window.
double battery_leak(double soc, const BatterySpec& spec);

/// battery_step over one hour with the leak floored as in battery_leak.
double battery_step_floored(double soc, double p_bs, double capacity, const BatterySpec& spec);

/// Faded capacity after `n_cycles`, floored at the replacement threshold.
double battery_capacity(double e_init, double n_cycles, const BatterySpec& spec);

/// Diesel fuel use in L/h. Zero output means the engine is offline.
double de_fuel_liters(double p_gen, const GeneratorSpec& spec);

/// Cost in $ of `liters` of diesel at `price_per_gal`.
double de_fuel_cost(double liters, double price_per_gal);

/// Microturbine gas use in MMBtu/h.
double mt_fuel_mmbtu(double p_gen, const GeneratorSpec& spec);

/// Hourly fuel cost in $ for either generator kind; zero when offline.
double generator_fuel_cost(double p_gen, const GeneratorSpec& spec);

}  // namespace hybridgrid
