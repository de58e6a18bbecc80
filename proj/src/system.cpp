#include "hybridgrid/system.hpp"

#include <cmath>

#include "hybridgrid/error.hpp"

namespace hybridgrid {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

bool non_negative(double v) { return std::isfinite(v) && v >= 0.0; }
bool positive(double v) { return std::isfinite(v) && v > 0.0; }
bool unit_fraction(double v) { return std::isfinite(v) && v > 0.0 && v <= 1.0; }

}  // namespace

void PvSpec::validate() const {
  require(unit_fraction(eta_ref), "pv.eta_ref must lie in (0, 1]");
  require(unit_fraction(eta_pc), "pv.eta_pc must lie in (0, 1]");
  require(positive(temp_ref), "pv.temp_ref must be > 0");
  require(positive(irr_noct), "pv.irr_noct must be > 0");
  require(positive(temp_cell_noct), "pv.temp_cell_noct must be > 0");
  require(positive(temp_amb_noct), "pv.temp_amb_noct must be > 0");
  require(non_negative(beta), "pv.beta must be >= 0");
  require(positive(rated_power), "pv.rated_power must be > 0");
  require(positive(collector_area), "pv.collector_area must be > 0");
}

void WindSpec::validate() const {
  require(positive(hub_height), "wind.hub_height must be > 0");
  require(positive(rated_power), "wind.rated_power must be > 0");
  require(positive(cut_in) && cut_in < rated_speed && rated_speed < cut_out,
          "wind speeds must satisfy 0 < cut_in < rated_speed < cut_out");
  require(shear_exponent > 0.0 && shear_exponent < 0.5, "wind.shear_exponent must lie in (0, 0.5)");
}

BatterySpec BatterySpec::lithium_ion() { return BatterySpec{}; }

BatterySpec BatterySpec::lead_acid() {
  BatterySpec b;
  b.chemistry = Chemistry::LeadAcid;
  b.soc_min = 0.50;
  b.soc_max = 0.90;
  b.self_discharge_monthly = 0.05;
  b.round_trip_eff = 0.75;
  b.lifetime_years = 5.0;
  b.lifetime_cycles = 1400.0;
  b.rated_power_per_unit = 0.42;
  b.unit_energy = 2.0;
  b.fade_per_cycle = 0.000214;
  b.costs.capital_per_kwh = 255.0;
  return b;
}

double BatterySpec::power_limit(double capacity_kwh) const {
  if (power_mode == BatteryPowerMode::Fixed) return capacity_kwh > 0.0 ? rated_power_per_unit : 0.0;
  return rated_power_per_unit * capacity_kwh / unit_energy;
}

void BatterySpec::validate() const {
  require(soc_min >= 0.0 && soc_min < soc_max && soc_max <= 1.0, "battery SOC bounds must satisfy 0 <= min < max <= 1");
  require(non_negative(self_discharge_monthly), "battery.self_discharge_monthly must be >= 0");
  require(unit_fraction(round_trip_eff), "battery.round_trip_eff must lie in (0, 1]");
  require(positive(lifetime_years), "battery.lifetime_years must be > 0");
  require(positive(lifetime_cycles), "battery.lifetime_cycles must be > 0");
  require(positive(rated_power_per_unit), "battery.rated_power_per_unit must be > 0");
  require(positive(unit_energy), "battery.unit_energy must be > 0");
  require(non_negative(fade_per_cycle), "battery.fade_per_cycle must be >= 0");
  require(replacement_threshold > 0.0 && replacement_threshold <= 1.0,
          "battery.replacement_threshold must lie in (0, 1]");
  require(non_negative(costs.capital_per_kwh) && non_negative(costs.replacement_fraction) &&
              non_negative(costs.om_fixed_fraction),
          "battery costs must be >= 0");
}

EmissionFactors EmissionFactors::diesel() { return EmissionFactors{}; }

EmissionFactors EmissionFactors::microturbine() {
  return EmissionFactors{0.631, 2.851, 20.884, 0.003, 0.604, 0.047, 0.047, 0.047};
}

double EmissionFactors::total_kg_per_kwh() const {
  return co2_kg + (co_g + nox_g + so2_g + voc_g + pm_g + pm25_g + pm10_g) / 1000.0;
}

GeneratorSpec GeneratorSpec::diesel() { return GeneratorSpec{}; }

GeneratorSpec GeneratorSpec::microturbine() {
  GeneratorSpec g;
  g.kind = GeneratorKind::Microturbine;
  g.fuel_price = 2.19;
  g.lifetime_hours = 40000.0;
  g.emissions = EmissionFactors::microturbine();
  g.costs = GeneratorCosts{3320.0, 0.90, 0.02, 0.013, 0.45, 0.23};
  return g;
}

void GeneratorSpec::validate() const {
  require(non_negative(rated_power), "generator.rated_power must be >= 0");
  require(min_fraction >= 0.0 && min_fraction < 1.0, "generator.min_fraction must lie in [0, 1)");
  require(non_negative(fuel_coeff_a) && non_negative(fuel_coeff_b) && non_negative(mt_fuel_slope),
          "generator fuel coefficients must be >= 0");
  require(non_negative(fuel_price), "generator.fuel_price must be >= 0");
  require(positive(lifetime_hours), "generator.lifetime_hours must be > 0");
  const auto& e = emissions;
  require(non_negative(e.co2_kg) && non_negative(e.co_g) && non_negative(e.nox_g) && non_negative(e.so2_g) &&
              non_negative(e.voc_g) && non_negative(e.pm_g) && non_negative(e.pm25_g) && non_negative(e.pm10_g),
          "emission factors must be >= 0");
  require(non_negative(costs.capital_per_kw) && non_negative(costs.replacement_fraction) &&
              non_negative(costs.om_fixed_fraction) && non_negative(costs.om_variable) &&
              non_negative(costs.startup_cost) && non_negative(costs.shutdown_cost),
          "generator costs must be >= 0");
}

void ConverterSpec::validate() const {
  require(unit_fraction(eta_inv) && unit_fraction(eta_rec), "converter efficiencies must lie in (0, 1]");
  require(non_negative(rated_power), "converter.rated_power must be >= 0");
  require(non_negative(capital_cost), "converter.capital_cost must be >= 0");
  require(positive(lifetime_years), "converter.lifetime_years must be > 0");
}

void FinancialParams::validate() const {
  require(std::isfinite(system_lifetime) && system_lifetime >= 1.0, "finance.system_lifetime must be >= 1");
  require(nominal_rate >= -0.5 && nominal_rate <= 1.0, "finance.nominal_rate must lie in [-0.5, 1]");
  require(inflation >= -0.5 && inflation <= 1.0, "finance.inflation must lie in [-0.5, 1]");
  require(positive(pv_lifetime) && positive(wt_lifetime), "component lifetimes must be > 0");
}

void CostTable::validate() const {
  require(non_negative(pv_capital_per_kw) && non_negative(wt_capital_per_kw) &&
              non_negative(pv_om_fixed_fraction) && non_negative(wt_om_fixed_fraction),
          "PV/WT costs must be >= 0");
}

StrategyConfig StrategyConfig::numbered(int strategy) {
  switch (strategy) {
    case 1: return {true, ReplacementPolicy::FixedInterval};
    case 2: return {false, ReplacementPolicy::FixedInterval};
    case 3: return {true, ReplacementPolicy::CycleCount};
    case 4: return {false, ReplacementPolicy::CycleCount};
    default: throw DomainError("strategy must be 1, 2, 3 or 4");
  }
}

void SystemSpec::validate() const {
  pv.validate();
  wind.validate();
  battery.validate();
  generator.validate();
  converter.validate();
  costs.validate();
  finance.validate();
}

std::string to_string(Chemistry c) { return c == Chemistry::LithiumIon ? "LI" : "LA"; }
std::string to_string(GeneratorKind k) { return k == GeneratorKind::Diesel ? "DE" : "MT"; }

}  // namespace hybridgrid

namespace hybridgrid {

void Design::validate() const {
  if (!(std::isfinite(pv) && std::isfinite(wt) && std::isfinite(battery_kwh))) {
    throw DomainError("design components must be finite");
  }
  if (pv < 0.0 || wt < 0.0 || battery_kwh < 0.0) throw DomainError("design components must be >= 0");
  if (mode == DesignMode::IntegerCounts && (pv != std::floor(pv) || wt != std::floor(wt))) {
    throw DomainError("PV and WT counts must be integers in IntegerCounts mode");
  }
}

}  // namespace hybridgrid
