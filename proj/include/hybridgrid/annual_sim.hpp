#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "hybridgrid/data_ingest.hpp"
#include "hybridgrid/economics.hpp"
#include "hybridgrid/system.hpp"

namespace hybridgrid {

/// Hourly traces of one simulation run. Powers in kW, soc as a fraction.
/// `soc` holds the state at the start of each hour.
struct SimTraces {
  std::vector<double> p_pv;    // DC
  std::vector<double> p_wt;    // AC, before rectification
  std::vector<double> p_res;   // p_pv + p_wt * eta_rec
  std::vector<double> p_dg;    // AC
  std::vector<double> p_bs;    // DC, + discharge / - charge
  std::vector<double> soc;
  std::vector<double> p_dump;  // DC
  std::vector<double> p_lost;  // AC (customer side)
  std::vector<double> load;    // AC

  std::size_t size() const { return load.size(); }
  void reserve(std::size_t n);
};

struct SimResult {
  std::optional<SimTraces> traces;

  // Aggregates over the simulated horizon.
  double dg_online_hours = 0.0;
  double dg_startups = 0.0;
  double dg_shutdowns = 0.0;
  double dg_energy_kwh = 0.0;
  double dg_fuel_cost = 0.0;
  double battery_cycles = 0.0;
  double pv_energy_kwh = 0.0;
  double wt_energy_kwh = 0.0;
  double dump_kwh = 0.0;
  double lost_kwh = 0.0;
  double load_kwh = 0.0;
  double min_soc = 0.0;
  double max_soc = 0.0;
  double final_capacity_kwh = 0.0;

  double emissions_kg = 0.0;  // annualized
  CostBreakdown costs;
  ObjectiveVector objectives;
};

/// Outcome of one hour of the priority dispatch.
struct HourDispatch {
  double p_bs = 0.0;  // DC, + discharge / - charge
  double p_dg = 0.0;  // AC
  double dump = 0.0;  // DC
  double lost = 0.0;  // AC
};

/// Load-following priority rules for one hour: renewables, then battery,
/// then generator (at least P_min once started), surplus generator output to
/// the battery when allowed, dump, and finally lost load. `p_ch_max` and
/// `p_dis_max` are the DC limits left by the power and SOC bounds.
HourDispatch rule_based_hour(double p_res, double load, double p_ch_max, double p_dis_max, const SystemSpec& spec);

/// Immutable inputs shared by every evaluation of the sizing objective.
/// Per-module PV and per-turbine WT outputs are computed once here.
class SimulationContext {
 public:
  /// The baseline is computed from `spec.generator` unless given.
  SimulationContext(const ClimateSeries& climate, LoadSeries load, SystemSpec spec,
                    std::optional<Baseline> baseline = std::nullopt);

  const SystemSpec& spec() const { return spec_; }
  const LoadSeries& load() const { return load_; }
  const Baseline& baseline() const { return baseline_; }
  std::span<const double> pv_unit() const { return pv_unit_; }
  std::span<const double> wt_unit() const { return wt_unit_; }
  std::size_t hours() const { return load_.size(); }

 private:
  SystemSpec spec_;
  LoadSeries load_;
  std::vector<double> pv_unit_;
  std::vector<double> wt_unit_;
  Baseline baseline_;
};

/// Hourly load-following simulation of `design`. Throws DomainError on an
/// invalid design; the context validates climate and load on construction.
/// The bank starts at soc_max unless `initial_soc` is given.
SimResult simulate_year(const Design& design, const SimulationContext& ctx, bool keep_traces = false,
                        std::optional<double> initial_soc = std::nullopt);

/// Weighted sizing objective of `design` (runs simulate_year).
double sizing_objective(const Design& design, const SimulationContext& ctx, const Weights& weights);

/// Hours whose DC-bus balance residual exceeds `tol` kW.
std::vector<std::size_t> power_balance_violations(const SimTraces& traces, const ConverterSpec& conv,
                                                  double tol = 1e-6);
bool hourly_power_balance_check(const SimTraces& traces, const ConverterSpec& conv, double tol = 1e-6);

void write_trace_csv(const std::filesystem::path& path, const SimTraces& traces);

}  // namespace hybridgrid
