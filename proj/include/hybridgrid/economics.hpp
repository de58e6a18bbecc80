#pragma once

#include <span>
#include <vector>

#include "hybridgrid/data_ingest.hpp"
#include "hybridgrid/system.hpp"

namespace hybridgrid {

// Discounting --------------------------------------------------------------

/// Real discount rate (i - f) / (1 + f).
double real_rate(const FinancialParams& fin);

/// Capital recovery factor at rate `r` over `years`; 1/T at r = 0.
double crf(double r, double years);

/// Present worth of a cost recurring every year of the system lifetime and
/// escalating with inflation.
double pw_recurring(double annual_cost, const FinancialParams& fin);

/// Interest rate adjusted to a replacement period of `replacement_period` years.
double adjusted_rate(const FinancialParams& fin, double replacement_period);

/// Present worth of a replacement cost incurred every `replacement_period`
/// years. An infinite period (component never used) contributes nothing.
double pw_nonrecurring(double replacement_cost, const FinancialParams& fin, double replacement_period);

// Lifecycle cost ------------------------------------------------------------

struct CapitalBreakdown {
  double pv = 0.0;
  double wt = 0.0;
  double battery = 0.0;
  double generator = 0.0;
  double converter = 0.0;

  double total() const { return pv + wt + battery + generator + converter; }
};

CapitalBreakdown initial_capital(const Design& design, const SystemSpec& spec);

/// Annual operating totals produced by a simulation (or a baseline run).
struct OperatingTotals {
  double dg_online_hours = 0.0;
  double dg_energy_kwh = 0.0;   // AC generator output
  double dg_fuel_cost = 0.0;    // $
  double dg_startups = 0.0;
  double dg_shutdowns = 0.0;
  double battery_cycles = 0.0;
  double load_kwh = 0.0;
};

struct RecurringBreakdown {
  double om_fixed_pv = 0.0;
  double om_fixed_wt = 0.0;
  double om_fixed_battery = 0.0;
  double om_fixed_generator = 0.0;
  double om_variable_generator = 0.0;
  double fuel = 0.0;
  double startup = 0.0;
  double shutdown = 0.0;

  double total() const {
    return om_fixed_pv + om_fixed_wt + om_fixed_battery + om_fixed_generator + om_variable_generator + fuel +
           startup + shutdown;
  }
};

RecurringBreakdown annual_recurring(const CapitalBreakdown& capital, const OperatingTotals& ops,
                                    const SystemSpec& spec);

struct CostBreakdown {
  CapitalBreakdown capital;
  RecurringBreakdown recurring;
  double battery_replacement_period = 0.0;    // years; +inf if never
  double generator_replacement_period = 0.0;  // years; +inf if never
  double pw_recurring = 0.0;
  double pw_nonrecurring = 0.0;
  double tnpc = 0.0;
  double crf = 0.0;
  double tac = 0.0;
  double lcoe = 0.0;  // $/kWh
};

/// Full lifecycle costing of a simulated design.
CostBreakdown lifecycle_costs(const Design& design, const OperatingTotals& ops, const SystemSpec& spec);

/// Levelized cost: TNPC * CRF / annual load.
double lcoe(double tnpc, double crf_value, double annual_load_kwh);

double emissions_total(double dg_energy_kwh, const GeneratorSpec& spec);

/// LCOE and emissions of the same community served by the generator alone.
struct Baseline {
  double lcoe = 0.0;          // $/kWh
  double emissions_kg = 0.0;  // kg per year
  CostBreakdown costs;
};

/// Loads shorter or longer than 8760 h are scaled to annual totals.

Baseline baseline_metrics(const LoadSeries& load, const SystemSpec& spec);

// Objectives ----------------------------------------------------------------

struct ObjectiveVector {
  double lcoe_norm = 0.0;
  double em_norm = 0.0;
  double dpsp = 0.0;
  double repg = 0.0;
  double one_minus_ref = 0.0;

  std::vector<double> as_vector() const { return {lcoe_norm, em_norm, dpsp, repg, one_minus_ref}; }
};

/// Objective weights. Five entries for sizing, four for day-ahead dispatch.
struct Weights {
  std::vector<double> w;

  static Weights equal(std::size_t n) { return Weights{std::vector<double>(n, 1.0 / static_cast<double>(n))}; }
  /// Sets weight `index` to `value` and the others to (1 - value) / (n - 1).
  static Weights sweep(std::size_t n, std::size_t index, double value);
  void validate(std::size_t expected_size) const;
};

/// Unserved load fraction. Throws DomainError when total load is zero.
double metrics_dpsp(std::span<const double> lost, std::span<const double> load);
/// Dumped share of DC generation; 0 when nothing was generated.
double metrics_repg(std::span<const double> dump, std::span<const double> res_dc, std::span<const double> dg,
                    double eta_rec);
/// Renewable share of DC generation; 0 when nothing was generated.
double metrics_ref(std::span<const double> pv, std::span<const double> wt, std::span<const double> dg,
                   double eta_rec);

/// Weighted sum of the five sizing objectives.
double weighted_objective(const ObjectiveVector& obj, const Weights& w);

/// Grid-extension distance at which the microgrid's annual cost equals
/// grid supply. Negative when the grid is cheaper at any distance.
double break_even_distance(double tac, double crf_value, double annual_load_kwh, double grid_lcoe,
                           double ext_cost_per_km);

}  // namespace hybridgrid
