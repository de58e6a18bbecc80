#include "hybridgrid/economics.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "hybridgrid/devices.hpp"
#include "hybridgrid/error.hpp"

namespace hybridgrid {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// C * sum_{k=1..T} x^k in closed form.
double escalated_series(double cost, double x, double years) {
  if (cost == 0.0) return 0.0;
  if (std::abs(x - 1.0) < 1e-12) return cost * years;
  return cost * x * (std::pow(x, years) - 1.0) / (x - 1.0);
}

double replacement_pw(double cost, const FinancialParams& fin, double period) {
  if (!(period > 0.0) || std::isinf(period) || cost == 0.0) return 0.0;
  return pw_nonrecurring(cost, fin, period);
}

}  // namespace

double real_rate(const FinancialParams& fin) {
  if (!(fin.inflation > -1.0)) throw DomainError("inflation must be > -1");
  return (fin.nominal_rate - fin.inflation) / (1.0 + fin.inflation);
}

double crf(double r, double years) {
  if (!(r > -1.0)) throw DomainError("CRF rate must be > -1");
  if (!(years >= 1.0)) throw DomainError("CRF horizon must be >= 1 year");
  if (std::abs(r) < 1e-12) return 1.0 / years;
  const double g = std::pow(1.0 + r, years);
  return r * g / (g - 1.0);
}

double pw_recurring(double annual_cost, const FinancialParams& fin) {
  const double x = (1.0 + fin.inflation) / (1.0 + fin.nominal_rate);
  return escalated_series(annual_cost, x, fin.system_lifetime);
}

double adjusted_rate(const FinancialParams& fin, double replacement_period) {
  if (!(replacement_period > 0.0)) throw DomainError("replacement period must be > 0");
  const double L = replacement_period;
  // Evaluated in log space so long periods do not overflow.
  return std::exp(L * std::log1p(fin.nominal_rate) - (L - 1.0) * std::log1p(fin.inflation)) - 1.0;
}

double pw_nonrecurring(double replacement_cost, const FinancialParams& fin, double replacement_period) {
  if (std::isinf(replacement_period)) return 0.0;
  const double i_adj = adjusted_rate(fin, replacement_period);
  const double x = (1.0 + fin.inflation) / (1.0 + i_adj);
  return escalated_series(replacement_cost, x, fin.system_lifetime);
}

CapitalBreakdown initial_capital(const Design& design, const SystemSpec& spec) {
  CapitalBreakdown ic;
  ic.pv = spec.costs.pv_capital_per_kw * design.pv_rated_kw(spec.pv);
  ic.wt = spec.costs.wt_capital_per_kw * design.wt_rated_kw(spec.wind);
  ic.battery = spec.battery.costs.capital_per_kwh * design.battery_kwh;
  ic.generator = spec.generator.costs.capital_per_kw * spec.generator.rated_power;
  ic.converter = spec.converter.capital_cost;
  return ic;
}

RecurringBreakdown annual_recurring(const CapitalBreakdown& capital, const OperatingTotals& ops,
                                    const SystemSpec& spec) {
  const auto& g = spec.generator;
  RecurringBreakdown rec;
  rec.om_fixed_pv = spec.costs.pv_om_fixed_fraction * capital.pv;
  rec.om_fixed_wt = spec.costs.wt_om_fixed_fraction * capital.wt;
  rec.om_fixed_battery = spec.battery.costs.om_fixed_fraction * capital.battery;
  rec.om_fixed_generator = g.costs.om_fixed_fraction * capital.generator;
  rec.om_variable_generator = g.kind == GeneratorKind::Diesel ? g.costs.om_variable * ops.dg_online_hours
                                                              : g.costs.om_variable * ops.dg_energy_kwh;
  rec.fuel = ops.dg_fuel_cost;
  rec.startup = g.costs.startup_cost * ops.dg_startups;
  rec.shutdown = g.costs.shutdown_cost * ops.dg_shutdowns;
  return rec;
}

CostBreakdown lifecycle_costs(const Design& design, const OperatingTotals& ops, const SystemSpec& spec) {
  const auto& fin = spec.finance;
  CostBreakdown out;
  out.capital = initial_capital(design, spec);
  out.recurring = annual_recurring(out.capital, ops, spec);

  if (design.battery_kwh <= 0.0) {
    out.battery_replacement_period = kInf;
  } else if (spec.strategy.battery_replacement == ReplacementPolicy::FixedInterval) {
    out.battery_replacement_period = spec.battery.lifetime_years;
  } else {
    out.battery_replacement_period = ops.battery_cycles > 0.0 ? spec.battery.lifetime_cycles / ops.battery_cycles : kInf;
  }
  out.generator_replacement_period =
      ops.dg_online_hours > 0.0 ? spec.generator.lifetime_hours / ops.dg_online_hours : kInf;

  const double rc_battery = spec.battery.costs.replacement_fraction * out.capital.battery;
  const double rc_generator = spec.generator.costs.replacement_fraction * out.capital.generator;

  out.pw_recurring = pw_recurring(out.recurring.total(), fin);
  out.pw_nonrecurring = replacement_pw(rc_battery, fin, out.battery_replacement_period) +
                        replacement_pw(rc_generator, fin, out.generator_replacement_period);
  out.tnpc = out.capital.total() + out.pw_recurring + out.pw_nonrecurring;
  out.crf = crf(real_rate(fin), fin.system_lifetime);
  out.tac = out.tnpc * out.crf;
  out.lcoe = lcoe(out.tnpc, out.crf, ops.load_kwh);
  return out;
}

double lcoe(double tnpc, double crf_value, double annual_load_kwh) {
  if (!(annual_load_kwh > 0.0)) throw DomainError("LCOE needs a positive annual load");
  return tnpc * crf_value / annual_load_kwh;
}

double emissions_total(double dg_energy_kwh, const GeneratorSpec& spec) {
  return spec.emissions.total_kg_per_kwh() * dg_energy_kwh;
}

Baseline baseline_metrics(const LoadSeries& load, const SystemSpec& spec) {
  const auto& g = spec.generator;
  const double peak = load.peak_kw();
  if (g.rated_power < peak) {
    throw InfeasibleError("baseline generator rated " + std::to_string(g.rated_power) + " kW is below peak load " +
                          std::to_string(peak) + " kW");
  }
  if (load.size() == 0) throw DomainError("baseline needs a non-empty load series");
  // Horizons other than a full year are scaled to annual totals.
  const double annualize = 8760.0 / static_cast<double>(load.size());
  OperatingTotals ops;
  ops.load_kwh = load.total_kwh() * annualize;
  ops.dg_energy_kwh = ops.load_kwh;
  ops.dg_online_hours = 8760.0;
  ops.dg_startups = 1.0;
  ops.dg_shutdowns = 1.0;
  for (double p : load.demand_kw) {
    // The engine stays online for the whole horizon, so the rated-power
    // term of the diesel fuel law applies every hour even at zero demand.
    if (g.kind == GeneratorKind::Diesel) {
      ops.dg_fuel_cost += de_fuel_cost(g.fuel_coeff_a * p + g.fuel_coeff_b * g.rated_power, g.fuel_price);
    } else {
      ops.dg_fuel_cost += g.fuel_price * mt_fuel_mmbtu(p, g);
    }
  }
  ops.dg_fuel_cost *= annualize;

  // Generator only: no PV, WT, battery or converter.
  SystemSpec base = spec;
  base.converter.capital_cost = 0.0;
  Baseline out;
  out.costs = lifecycle_costs(Design::counts(0, 0, 0), ops, base);
  out.lcoe = out.costs.lcoe;
  out.emissions_kg = emissions_total(ops.dg_energy_kwh, g);
  return out;
}

Weights Weights::sweep(std::size_t n, std::size_t index, double value) {
  if (n < 2 || index >= n) throw DomainError("weight sweep index out of range");
  if (!(value >= 0.0 && value <= 1.0)) throw DomainError("swept weight must lie in [0, 1]");
  Weights w{std::vector<double>(n, (1.0 - value) / static_cast<double>(n - 1))};
  w.w[index] = value;
  return w;
}

void Weights::validate(std::size_t expected_size) const {
  if (w.size() != expected_size) {
    throw DomainError("expected " + std::to_string(expected_size) + " weights, got " + std::to_string(w.size()));
  }
  for (double v : w) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("each weight must lie in [0, 1]");
  }
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-9) throw DomainError("weights must sum to 1 (got " + std::to_string(sum) + ")");
}

double metrics_dpsp(std::span<const double> lost, std::span<const double> load) {
  if (lost.size() != load.size()) throw InputError("trace lengths differ");
  const double total = std::accumulate(load.begin(), load.end(), 0.0);
  if (!(total > 0.0)) throw DomainError("DPSP undefined for zero total load");
  return std::accumulate(lost.begin(), lost.end(), 0.0) / total;
}

double metrics_repg(std::span<const double> dump, std::span<const double> res_dc, std::span<const double> dg,
                    double eta_rec) {
  if (dump.size() != res_dc.size() || dump.size() != dg.size()) throw InputError("trace lengths differ");
  double gen = 0.0;
  for (std::size_t t = 0; t < dump.size(); ++t) gen += res_dc[t] + dg[t] * eta_rec;
  if (!(gen > 0.0)) return 0.0;
  return std::accumulate(dump.begin(), dump.end(), 0.0) / gen;
}

double metrics_ref(std::span<const double> pv, std::span<const double> wt, std::span<const double> dg,
                   double eta_rec) {
  if (pv.size() != wt.size() || pv.size() != dg.size()) throw InputError("trace lengths differ");
  double res = 0.0;
  double gen = 0.0;
  for (std::size_t t = 0; t < pv.size(); ++t) {
    const double r = pv[t] + wt[t] * eta_rec;
    res += r;
    gen += r + dg[t] * eta_rec;
  }
  if (!(gen > 0.0)) return 0.0;
  return res / gen;
}

double weighted_objective(const ObjectiveVector& obj, const Weights& w) {
  w.validate(5);
  const auto v = obj.as_vector();
  double sum = 0.0;
  for (std::size_t k = 0; k < 5; ++k) sum += w.w[k] * v[k];
  return sum;
}

double break_even_distance(double tac, double crf_value, double annual_load_kwh, double grid_lcoe,
                           double ext_cost_per_km) {
  if (!(ext_cost_per_km > 0.0)) throw DomainError("line extension cost must be > 0");
  if (!(crf_value > 0.0)) throw DomainError("CRF must be > 0");
  return (tac - grid_lcoe * annual_load_kwh) / (ext_cost_per_km * crf_value);
}

}  // namespace hybridgrid
