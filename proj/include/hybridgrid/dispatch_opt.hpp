#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hybridgrid/data_ingest.hpp"
#include "hybridgrid/economics.hpp"
#include "hybridgrid/system.hpp"

namespace hybridgrid {

/// Hourly setpoints for one day. p_bs is DC power, + discharge / - charge.
/// soc has one more entry than the setpoints (state after the last hour).
struct DispatchSchedule {
  std::vector<double> p_dg;
  std::vector<double> p_bs;
  std::vector<double> soc;
  bool feasible = false;

  std::size_t hours() const { return p_dg.size(); }
};

/// A sized system facing one day of weather and demand.
struct DispatchContext {
  SystemSpec spec;
  Design design;
  std::vector<double> p_pv;   // DC
  std::vector<double> p_wt;   // AC
  std::vector<double> p_res;  // DC
  std::vector<double> load;   // AC
  Weights weights = Weights::equal(4);
  double dpsp_max = 0.01;
  double initial_soc = 0.0;
  double coe_base = 0.0;  // $/kWh, generator-only supply of the same day
  double em_base = 0.0;   // kg

  /// Builds a context. The generator-only baseline uses `baseline_rated_kw`
  /// (raised to the day's peak load if lower). Initial SOC defaults to soc_max.
  static DispatchContext make(const SystemSpec& spec, const Design& design, const ClimateSeries& day,
                              const LoadSeries& day_load, Weights weights = Weights::equal(4),
                              double dpsp_max = 0.01, std::optional<double> initial_soc = std::nullopt,
                              double baseline_rated_kw = 16.0);

  std::size_t hours() const { return load.size(); }
  double battery_power_limit() const { return spec.battery.power_limit(design.battery_kwh); }
};

struct DispatchEvaluation {
  std::vector<double> soc;   // hours + 1 entries
  std::vector<double> dump;  // DC
  std::vector<double> lost;  // AC
  double c_daily = 0.0;      // $
  double coe = 0.0;          // $/kWh
  double coe_norm = 0.0;
  double emissions_kg = 0.0;
  double em_norm = 0.0;
  double dpsp = 0.0;
  double repg = 0.0;
  double ref = 0.0;
  double dg_startups = 0.0;
  double dg_shutdowns = 0.0;
  /// w1 COE_norm + w2 Em_norm + w3 REPG + w4 (1 - REF).
  double weighted = 0.0;
  /// Equal-weight sum of the five terms (COE, Em, DPSP, REPG, 1 - REF).
  double reported_objective = 0.0;

  // Constraint residuals; all zero for a feasible schedule.
  double dg_violation = 0.0;    // kW outside {0} U [P_min, P_rated]
  double bs_violation = 0.0;    // kW beyond the power limit
  double soc_violation = 0.0;   // SOC outside [soc_min, soc_max], summed over all entries
  double dpsp_violation = 0.0;  // max(0, DPSP - DPSP_max)
  bool feasible = false;
};

/// Propagates SOC through the schedule and computes the daily metrics.
/// Infeasibility is reported in the result, never thrown.
DispatchEvaluation evaluate_schedule(const DispatchSchedule& s, const DispatchContext& ctx);

/// The load-following rule-based schedule for the context's day.
DispatchSchedule rule_based_schedule(const DispatchContext& ctx);

/// Schedule with constant setpoints (DG clipped to its feasible set), e.g.
/// 7 kW DG and 1 kW battery discharge.
DispatchSchedule constant_schedule(const DispatchContext& ctx, double p_dg, double p_bs);

struct DispatchParams {
  std::uint64_t seed = 0;
  int workers = 0;
  std::size_t inner_max_evals = 4000;   // per DG on/off pattern
  std::size_t anneal_patterns = 300;     // patterns tried after the descent
  double dpsp_penalty = 100.0;
  double initial_dg_kw = 7.0;
  double initial_bs_kw = 1.0;
};

struct DispatchResult {
  DispatchSchedule schedule;
  DispatchEvaluation evaluation;
  DispatchEvaluation rule_based;
  bool feasible = false;
  std::string message;
  std::size_t patterns_evaluated = 0;
};

/// Two-level day-ahead optimization: DG on/off pattern search outside,
/// projected coordinate descent on the setpoints inside. The rule-based
/// schedule is always a candidate, so a feasible rule-based schedule is never
/// beaten by the returned one. `initial` adds another seed.
DispatchResult optimize_day(const DispatchContext& ctx, const DispatchParams& params,
                            const std::optional<DispatchSchedule>& initial = std::nullopt);

/// Elementwise scaling of irradiance and wind speed.
ClimateSeries scenario_scale_climate(const ClimateSeries& day, double irr_factor, double wind_factor);

struct Scenario {
  std::string name;
  double irr_factor = 1.0;
  double wind_factor = 1.0;
  std::optional<LoadSeries> load;  // replaces the day's load when set
};

struct ScenarioOutcome {
  std::string name;
  DispatchResult result;
  std::string error;  // non-empty when the scenario failed to run
};

/// Runs optimize_day for each scenario. Failures are recorded per row.
std::vector<ScenarioOutcome> robustness_suite(const SystemSpec& spec, const Design& design,
                                              const ClimateSeries& day, const LoadSeries& day_load,
                                              std::span<const Scenario> scenarios, const DispatchParams& params,
                                              Weights weights = Weights::equal(4), double dpsp_max = 0.01,
                                              double baseline_rated_kw = 16.0);

/// Baseline, low solar, low wind, both low, peaky load, shifted load and
/// shifted load with 10% curtailment.
std::vector<Scenario> default_scenarios(const SystemSpec& spec, const Design& design, const ClimateSeries& day,
                                        const LoadSeries& day_load, std::uint64_t seed);

void write_schedule_csv(const std::filesystem::path& path, const DispatchSchedule& s, const DispatchEvaluation& e,
                        const DispatchContext& ctx);
void write_scenario_csv(const std::filesystem::path& path, std::span<const ScenarioOutcome> rows);

}  // namespace hybridgrid
