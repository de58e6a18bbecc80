#include "hybridgrid/devices.hpp"

#include <algorithm>
#include <cmath>

#include "hybridgrid/error.hpp"

namespace hybridgrid {

namespace {
constexpr double kLitersPerGallon = 3.78541;
}

double pv_efficiency(double irr, double temp_amb, const PvSpec& spec) {
  const double bracket = 1.0 -
                         0.9 * spec.beta * (irr / spec.irr_noct) * (spec.temp_cell_noct - spec.temp_amb_noct) -
                         spec.beta * (temp_amb - spec.temp_ref);
  return std::max(0.0, spec.eta_ref * spec.eta_pc * bracket);
}

double pv_power(double n_modules, double irr, double temp_amb, const PvSpec& spec) {
  if (n_modules <= 0.0 || irr <= 0.0) return 0.0;
  return n_modules * pv_efficiency(irr, temp_amb, spec) * spec.collector_area * irr;
}

double hub_wind_speed(double v_ref, double ref_height, const WindSpec& spec) {
  if (v_ref <= 0.0) return 0.0;
  return v_ref * std::pow(spec.hub_height / ref_height, spec.shear_exponent);
}

PowerCurveCoefficients wt_curve_coefficients(const WindSpec& spec) {
  const double vc = spec.cut_in;
  const double vr = spec.rated_speed;
  const double k = std::pow((vc + vr) / (2.0 * vr), 3);
  if (spec.printed_coefficients) {
    const double d = vc * vc - vr * vr;
    return {(vc * (vc + vr) - 4.0 * vc * vr * k) / d, (4.0 * (vc + vr) * k - 3.0 * (vc + vr)) / d,
            (2.0 - 4.0 * k) / d};
  }
  const double d = (vc - vr) * (vc - vr);
  return {(vc * (vc + vr) - 4.0 * vc * vr * k) / d, (4.0 * (vc + vr) * k - (3.0 * vc + vr)) / d,
          (2.0 - 4.0 * k) / d};
}

double wt_power(double n_turbines, double v_hub, const WindSpec& spec) {
  if (n_turbines <= 0.0 || v_hub < spec.cut_in || v_hub > spec.cut_out) return 0.0;
  const double rated = n_turbines * spec.rated_power;
  if (v_hub >= spec.rated_speed) return rated;
  return std::max(0.0, rated * wt_curve_coefficients(spec)(v_hub));
}

double battery_step(double soc, double p_bs, double dt, double capacity, const BatterySpec& spec) {
  return (1.0 - spec.hourly_self_discharge() * dt) * soc - p_bs * dt * spec.round_trip_eff / capacity;
}

double battery_leak(double soc, const BatterySpec& spec) {
  return std::max((1.0 - spec.hourly_self_discharge()) * soc, std::min(soc, spec.soc_min));
}

double battery_step_floored(double soc, double p_bs, double capacity, const BatterySpec& spec) {
  return battery_leak(soc, spec) - p_bs * spec.round_trip_eff / capacity;
}

double battery_capacity(double e_init, double n_cycles, const BatterySpec& spec) {
  const double faded = e_init * (1.0 - n_cycles * spec.fade_per_cycle);
  return std::max(faded, spec.replacement_threshold * e_init);
}

double de_fuel_liters(double p_gen, const GeneratorSpec& spec) {
  if (p_gen < 0.0 || p_gen > spec.rated_power * (1.0 + 1e-12)) {
    throw DomainError("generator output outside [0, rated]");
  }
  if (p_gen == 0.0) return 0.0;
  return spec.fuel_coeff_a * p_gen + spec.fuel_coeff_b * spec.rated_power;
}

double de_fuel_cost(double liters, double price_per_gal) { return price_per_gal * liters / kLitersPerGallon; }

double mt_fuel_mmbtu(double p_gen, const GeneratorSpec& spec) {
  if (p_gen < 0.0 || p_gen > spec.rated_power * (1.0 + 1e-12)) {
    throw DomainError("generator output outside [0, rated]");
  }
  return spec.mt_fuel_slope * p_gen;
}

double generator_fuel_cost(double p_gen, const GeneratorSpec& spec) {
  if (spec.kind == GeneratorKind::Diesel) return de_fuel_cost(de_fuel_liters(p_gen, spec), spec.fuel_price);
  return spec.fuel_price * mt_fuel_mmbtu(p_gen, spec);
}

}  // namespace hybridgrid
