#pragma once

#include <string>

namespace hybridgrid {

// Device, cost, and financial parameter blocks. Defaults are the Timbila
// case-study values (255 Wp mono-Si module, 3.5 kW downwind turbine, Li-ion
// and lead-acid banks, 16 kW diesel engine or microturbine).

struct PvSpec {
  double eta_ref = 0.154;        // module efficiency at reference conditions
  double eta_pc = 1.0;           // power conditioning (ideal MPPT)
  double temp_ref = 25.0;        // deg C
  double irr_noct = 0.8;         // kW/m^2
  double temp_cell_noct = 45.7;  // deg C
  double temp_amb_noct = 20.0;   // deg C
  double beta = 0.0045;          // 1/deg C
  double rated_power = 0.255;    // kW per module
  double collector_area = 1.4602;  // m^2 per module

  void validate() const;
};

struct WindSpec {
  double hub_height = 14.5;      // m
  double rated_power = 3.5;      // kW per turbine
  double cut_in = 2.8;           // m/s
  double rated_speed = 11.0;     // m/s
  double cut_out = 22.0;         // m/s
  double shear_exponent = 0.14;  // power-law exponent
  /// Use the coefficient formulas with denominator v_c^2 - v_r^2 instead of
  /// the boundary-consistent (v_c - v_r)^2 form. Kept for comparison only.
  bool printed_coefficients = false;

  void validate() const;
};

enum class Chemistry { LithiumIon, LeadAcid };

/// How the battery power limit relates to installed energy.
enum class BatteryPowerMode {
  Proportional,  // rated_power_per_unit * (E_C / unit_energy)
  Fixed,         // rated_power_per_unit, independent of installed kWh
};

struct BatteryCosts {
  double capital_per_kwh = 300.0;
  double replacement_fraction = 0.90;  // of capital
  double om_fixed_fraction = 0.01;     // of capital per year
};

struct BatterySpec {
  Chemistry chemistry = Chemistry::LithiumIon;
  double soc_min = 0.10;
  double soc_max = 0.90;
  double self_discharge_monthly = 0.075;
  double round_trip_eff = 0.90;
  double lifetime_years = 15.0;
  double lifetime_cycles = 5475.0;
  double rated_power_per_unit = 3.68;  // kW
  double unit_energy = 13.5;           // kWh
  double fade_per_cycle = 0.000055;
  double replacement_threshold = 0.70;  // fraction of initial capacity
  BatteryPowerMode power_mode = BatteryPowerMode::Proportional;
  BatteryCosts costs{};

  static BatterySpec lithium_ion();
  static BatterySpec lead_acid();

  /// Hourly self-discharge fraction (monthly rate / 730 h).
  double hourly_self_discharge() const { return self_discharge_monthly / 730.0; }
  /// Charge/discharge power limit for a bank of capacity `capacity_kwh`.
  double power_limit(double capacity_kwh) const;
  void validate() const;
};

enum class GeneratorKind { Diesel, Microturbine };

/// Per-species emission factors. CO2 in kg/kWh, the rest in g/kWh.
struct EmissionFactors {
  double co2_kg = 0.649;
  double co_g = 4.063;
  double nox_g = 18.857;
  double so2_g = 0.074;
  double voc_g = 1.502;
  double pm_g = 1.338;
  double pm25_g = 1.338;
  double pm10_g = 1.338;

  static EmissionFactors diesel();
  static EmissionFactors microturbine();
  /// Sum of all species in kg/kWh.
  double total_kg_per_kwh() const;
};

struct GeneratorCosts {
  double capital_per_kw = 781.25;
  double replacement_fraction = 0.88;
  double om_fixed_fraction = 0.02;
  double om_variable = 0.24;  // $/h online (diesel) or $/kWh (microturbine)
  double startup_cost = 0.45;
  double shutdown_cost = 0.23;
};

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::Diesel;
  double rated_power = 16.0;  // kW
  double min_fraction = 0.3;
  double fuel_coeff_a = 0.246;     // L/kWh, diesel
  double fuel_coeff_b = 0.08145;   // L/kWh of rated power, diesel
  double mt_fuel_slope = 0.84 / 61.0;  // MMBtu/kWh, microturbine
  double fuel_price = 3.20;        // $/gal diesel or $/MMBtu gas
  double lifetime_hours = 15000.0;
  EmissionFactors emissions{};
  GeneratorCosts costs{};

  static GeneratorSpec diesel();
  static GeneratorSpec microturbine();

  double min_power() const { return min_fraction * rated_power; }
  void validate() const;
};

struct ConverterSpec {
  double eta_inv = 0.90;
  double eta_rec = 0.90;
  double rated_power = 12.52;  // kW
  double capital_cost = 2800.0;
  double lifetime_years = 20.0;

  void validate() const;
};

struct FinancialParams {
  double nominal_rate = 0.09;
  double inflation = 0.057;
  double system_lifetime = 25.0;
  double pv_lifetime = 25.0;
  double wt_lifetime = 20.0;

  void validate() const;
};

/// Capital and O&M for PV and WT; battery, generator and converter costs
/// live with their device blocks.
struct CostTable {
  double pv_capital_per_kw = 1210.0;
  double wt_capital_per_kw = 1500.0;
  double pv_om_fixed_fraction = 0.01;
  double wt_om_fixed_fraction = 0.03;

  void validate() const;
};

enum class ReplacementPolicy { FixedInterval, CycleCount };

/// Operating strategy (four combinations of DG charging and battery replacement).
struct StrategyConfig {
  bool dg_may_charge_battery = true;
  ReplacementPolicy battery_replacement = ReplacementPolicy::CycleCount;

  /// Strategies 1-4: {charge, fixed}, {no charge, fixed}, {charge, cycles}, {no charge, cycles}.
  static StrategyConfig numbered(int strategy);
};

/// Battery cycle counting rule.
enum class CycleCounting {
  Reversals,           // +1 on every net-charging to net-discharging transition
  EquivalentFullCycles,  // throughput / (2 * usable capacity)
};

struct SystemSpec {
  PvSpec pv{};
  WindSpec wind{};
  BatterySpec battery = BatterySpec::lithium_ion();
  GeneratorSpec generator = GeneratorSpec::diesel();
  ConverterSpec converter{};
  CostTable costs{};
  FinancialParams finance{};
  StrategyConfig strategy{};
  CycleCounting cycle_counting = CycleCounting::Reversals;

  void validate() const;
};

std::string to_string(Chemistry c);
std::string to_string(GeneratorKind k);

}  // namespace hybridgrid

namespace hybridgrid {

enum class DesignMode {
  IntegerCounts,        // pv = module count, wt = turbine count
  ContinuousCapacities, // pv, wt = total rated kW
};

/// Sizing decision: PV, WT and initial battery energy.
struct Design {
  DesignMode mode = DesignMode::IntegerCounts;
  double pv = 0.0;
  double wt = 0.0;
  double battery_kwh = 0.0;

  static Design counts(double n_modules, double n_turbines, double battery_kwh) {
    return {DesignMode::IntegerCounts, n_modules, n_turbines, battery_kwh};
  }
  static Design capacities(double pv_kw, double wt_kw, double battery_kwh) {
    return {DesignMode::ContinuousCapacities, pv_kw, wt_kw, battery_kwh};
  }

  /// Module count, fractional in capacity mode.
  double pv_modules(const PvSpec& spec) const { return mode == DesignMode::IntegerCounts ? pv : pv / spec.rated_power; }
  double wt_turbines(const WindSpec& spec) const {
    return mode == DesignMode::IntegerCounts ? wt : wt / spec.rated_power;
  }
  double pv_rated_kw(const PvSpec& spec) const { return mode == DesignMode::IntegerCounts ? pv * spec.rated_power : pv; }
  double wt_rated_kw(const WindSpec& spec) const {
    return mode == DesignMode::IntegerCounts ? wt * spec.rated_power : wt;
  }

  void validate() const;
};

}  // namespace hybridgrid
