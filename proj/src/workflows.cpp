#include "hybridgrid/workflows.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "hybridgrid/annual_sim.hpp"
#include "hybridgrid/batch_eval.hpp"
#include "hybridgrid/dispatch_opt.hpp"
#include "hybridgrid/error.hpp"
#include "hybridgrid/global_opt.hpp"
#include "hybridgrid/rng.hpp"
#include "hybridgrid/sensitivity.hpp"
#include "hybridgrid/sizing.hpp"

namespace hybridgrid {

using nlohmann::json;

namespace {

// JSON has no infinity; never-replaced components report null.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::uint64_t seed_of(const RunConfig& cfg) {
  if (!cfg.seed) throw InputError("a seed is required (--seed or \"seed\" in the config)");
  return *cfg.seed;
}

SolverBudget budget_of(const RunConfig& cfg) {
  SolverBudget b;
  b.max_evals = cfg.solver.max_evals;
  b.seed = substream_seed(seed_of(cfg), "solver");
  b.workers = cfg.workers;
  b.stall_tolerance = cfg.solver.stall_tolerance;
  b.stall_iterations = cfg.solver.stall_iterations;
  return b;
}

SearchSpace space_of(const RunConfig& cfg) {
  return cfg.search_space ? *cfg.search_space : default_sizing_space(cfg.design_mode, cfg.system());
}

json design_json(const Design& d) {
  json j;
  j["mode"] = d.mode == DesignMode::IntegerCounts ? "counts" : "capacities";
  j["values"] = {d.pv, d.wt, d.battery_kwh};
  return j;
}

json objectives_json(const ObjectiveVector& o) {
  return {{"lcoe_norm", o.lcoe_norm},
          {"em_norm", o.em_norm},
          {"dpsp", o.dpsp},
          {"repg", o.repg},
          {"one_minus_ref", o.one_minus_ref}};
}

json costs_json(const CostBreakdown& c) {
  return {{"capital_usd",
           {{"pv", c.capital.pv},
            {"wt", c.capital.wt},
            {"battery", c.capital.battery},
            {"generator", c.capital.generator},
            {"converter", c.capital.converter},
            {"total", c.capital.total()}}},
          {"annual_recurring_usd", c.recurring.total()},
          {"battery_replacement_period_years", num(c.battery_replacement_period)},
          {"generator_replacement_period_years", num(c.generator_replacement_period)},
          {"pw_recurring_usd", c.pw_recurring},
          {"pw_nonrecurring_usd", c.pw_nonrecurring},
          {"tnpc_usd", c.tnpc},
          {"crf", c.crf},
          {"tac_usd", c.tac},
          {"lcoe_usd_per_kwh", c.lcoe}};
}

json sim_json(const SimResult& r, const Weights& w) {
  return {{"objectives", objectives_json(r.objectives)},
          {"weighted_objective", weighted_objective(r.objectives, w)},
          {"costs", costs_json(r.costs)},
          {"emissions_kg_per_year", r.emissions_kg},
          {"dg_online_hours", r.dg_online_hours},
          {"dg_startups", r.dg_startups},
          {"dg_energy_kwh", r.dg_energy_kwh},
          {"battery_cycles", r.battery_cycles},
          {"pv_energy_kwh", r.pv_energy_kwh},
          {"wt_energy_kwh", r.wt_energy_kwh},
          {"dump_kwh", r.dump_kwh},
          {"lost_kwh", r.lost_kwh},
          {"load_kwh", r.load_kwh},
          {"min_soc", r.min_soc},
          {"max_soc", r.max_soc},
          {"final_capacity_kwh", r.final_capacity_kwh}};
}

json baseline_json(const Baseline& b) {
  return {{"lcoe_usd_per_kwh", b.lcoe}, {"emissions_kg_per_year", b.emissions_kg}};
}

json dispatch_eval_json(const DispatchEvaluation& e) {
  return {{"min_obj", e.reported_objective},
          {"weighted_objective", e.weighted},
          {"c_daily_usd", e.c_daily},
          {"coe_norm", e.coe_norm},
          {"em_norm", e.em_norm},
          {"dpsp", e.dpsp},
          {"repg", e.repg},
          {"ref", e.ref},
          {"dg_startups", e.dg_startups},
          {"feasible", e.feasible},
          {"residuals",
           {{"dg_kw", e.dg_violation},
            {"bs_kw", e.bs_violation},
            {"soc", e.soc_violation},
            {"dpsp", e.dpsp_violation}}}};
}

struct Prepared {
  Inputs inputs;
  SystemSpec spec;
};

Prepared prepare(const RunConfig& cfg) {
  set_default_workers(cfg.workers);
  return {load_inputs(cfg.data, seed_of(cfg)), cfg.system()};
}

SizingResult run_sizing(const RunConfig& cfg, const SimulationContext& ctx) {
  return size_system(ctx, cfg.weights, cfg.solver.name, space_of(cfg), cfg.design_mode, budget_of(cfg));
}

json sizing_json(const SizingResult& r, const RunConfig& cfg) {
  json j = sim_json(r.sim, cfg.weights);
  j["design"] = design_json(r.design);
  j["solver"] = r.report.solver;
  j["evaluations"] = r.report.evaluations;
  return j;
}

}  // namespace

Inputs load_inputs(const DataConfig& raw, std::uint64_t seed) {
  const DataConfig data = resolve_data_paths(raw, std::filesystem::current_path());
  Inputs in;
  in.climate = read_climate_csv(data.climate_csv, data.ref_height_m);
  if (!data.neighbor_csvs.empty()) {
    std::vector<ClimateSeries> neighbors;
    for (const auto& p : data.neighbor_csvs) neighbors.push_back(read_climate_csv(p, data.ref_height_m));
    in.climate = fill_gaps_by_neighbor_average(in.climate, neighbors);
  }
  if (data.wind_correction_factor != 1.0) in.climate = scale_wind(in.climate, data.wind_correction_factor);
  if (!data.load_csv.empty()) {
    in.load = read_load_csv(data.load_csv);
  } else {
    in.load = generate_annual_load(read_load_csv(data.daily_load_csv), data.load_variation_fraction,
                                   substream_seed(seed, "load-gen"));
  }
  return in;
}

std::size_t peak_load_day(const LoadSeries& load) {
  const std::size_t days = load.size() / 24;
  if (days == 0) throw InputError("load series shorter than one day");
  std::size_t best = 0;
  double best_total = -1.0;
  for (std::size_t d = 0; d < days; ++d) {
    double total = 0.0;
    for (std::size_t h = 0; h < 24; ++h) total += load.demand_kw[d * 24 + h];
    if (total > best_total) {
      best_total = total;
      best = d;
    }
  }
  return best;
}

DayInputs day_inputs(const Inputs& in, std::size_t day) {
  if ((day + 1) * 24 > in.load.size()) throw DomainError("day " + std::to_string(day) + " is outside the series");
  DayInputs d;
  d.day = day;
  d.climate = in.climate.slice(day * 24, 24);
  const auto first = in.load.demand_kw.begin() + static_cast<std::ptrdiff_t>(day * 24);
  d.load.demand_kw.assign(first, first + 24);
  return d;
}

json cmd_simulate(const RunConfig& cfg, const RunOptions& opts) {
  if (!cfg.design) throw InputError("simulate needs a design (--design or sizing.design)");
  const Prepared p = prepare(cfg);
  const SimulationContext ctx(p.inputs.climate, p.inputs.load, p.spec);
  const Design design = cfg.design_from_values(*cfg.design);
  const SimResult r = simulate_year(design, ctx, true);
  write_trace_csv(opts.out_dir / "trace.csv", *r.traces);
  json j = sim_json(r, cfg.weights);
  j["design"] = design_json(design);
  j["baseline"] = baseline_json(ctx.baseline());
  j["power_balance_ok"] = hourly_power_balance_check(*r.traces, p.spec.converter);
  return j;
}

json cmd_size(const RunConfig& cfg, const RunOptions&) {
  const Prepared p = prepare(cfg);
  const SimulationContext ctx(p.inputs.climate, p.inputs.load, p.spec);
  json j = sizing_json(run_sizing(cfg, ctx), cfg);
  j["baseline"] = baseline_json(ctx.baseline());
  return j;
}

json cmd_dispatch(const RunConfig& cfg, const RunOptions& opts) {
  const Prepared p = prepare(cfg);
  json j;
  Design design;
  if (cfg.design) {
    design = cfg.design_from_values(*cfg.design);
  } else {
    const SimulationContext ctx(p.inputs.climate, p.inputs.load, p.spec);
    const SizingResult sized = run_sizing(cfg, ctx);
    design = sized.design;
    j["sizing"] = sizing_json(sized, cfg);
  }
  const std::size_t day = cfg.dispatch.day ? *cfg.dispatch.day : peak_load_day(p.inputs.load);
  const DayInputs d = day_inputs(p.inputs, day);
  const DispatchContext ctx = DispatchContext::make(p.spec, design, d.climate, d.load, cfg.dispatch.weights,
                                                    cfg.dispatch.dpsp_max_fraction, std::nullopt,
                                                    cfg.dispatch.baseline_rated_kw);
  DispatchParams params;
  params.seed = substream_seed(seed_of(cfg), "solver");
  params.workers = cfg.workers;
  params.inner_max_evals = cfg.dispatch.inner_max_evals;
  params.anneal_patterns = cfg.dispatch.anneal_patterns;
  params.dpsp_penalty = cfg.dispatch.dpsp_penalty;
  params.initial_dg_kw = cfg.dispatch.initial_dg_kw;
  params.initial_bs_kw = cfg.dispatch.initial_bs_kw;
  const DispatchResult r = optimize_day(ctx, params);
  write_schedule_csv(opts.out_dir / "schedule.csv", r.schedule, r.evaluation, ctx);

  j["design"] = design_json(design);
  j["day"] = day;
  j["optimized"] = dispatch_eval_json(r.evaluation);
  j["rule_based"] = dispatch_eval_json(r.rule_based);
  j["feasible"] = r.feasible;
  j["patterns_evaluated"] = r.patterns_evaluated;
  if (!r.message.empty()) j["message"] = r.message;

  if (cfg.dispatch.scenarios) {
    const auto scenarios = default_scenarios(p.spec, design, d.climate, d.load, seed_of(cfg));
    const auto rows = robustness_suite(p.spec, design, d.climate, d.load, scenarios, params, cfg.dispatch.weights,
                                       cfg.dispatch.dpsp_max_fraction, cfg.dispatch.baseline_rated_kw);
    write_scenario_csv(opts.out_dir / "scenarios.csv", rows);
    json s = json::array();
    for (const auto& row : rows) {
      json e{{"name", row.name}};
      if (row.error.empty()) {
        e["result"] = dispatch_eval_json(row.result.evaluation);
      } else {
        e["error"] = row.error;
      }
      s.push_back(e);
    }
    j["scenarios"] = s;
  }
  if (!r.feasible) throw InfeasibleError(r.message);
  return j;
}

json cmd_pareto(const RunConfig& cfg, const RunOptions& opts) {
  const Prepared p = prepare(cfg);
  const SimulationContext ctx(p.inputs.climate, p.inputs.load, p.spec);
  ParetoParams pp;
  pp.population = cfg.pareto.population;
  pp.generations = cfg.pareto.generations;
  pp.crossover_rate = cfg.pareto.crossover_rate;
  pp.sbx_eta = cfg.pareto.sbx_eta;
  pp.mutation_eta = cfg.pareto.mutation_eta;
  pp.seed = substream_seed(seed_of(cfg), "solver");
  pp.workers = cfg.workers;
  const auto front = pareto_sizing(ctx, space_of(cfg), cfg.design_mode, pp);

  std::ofstream csv(opts.out_dir / "pareto.csv");
  if (!csv) throw InputError("cannot write pareto.csv");
  csv.precision(10);
  csv << "n_s,n_w,e_b,lcoe_norm,em_norm,dpsp,repg,one_minus_ref\n";
  json points = json::array();
  for (const auto& pt : front) {
    csv << pt.point[0] << ',' << pt.point[1] << ',' << pt.point[2];
    for (double v : pt.objectives) csv << ',' << v;
    csv << '\n';
    points.push_back({{"point", pt.point}, {"objectives", pt.objectives}});
  }
  return {{"size", front.size()}, {"points", points}};
}

json cmd_sweep(const RunConfig& cfg, const RunOptions& opts) {
  const Prepared p = prepare(cfg);
  SweepSpec spec;
  spec.parameter = parse_sweep_parameter(cfg.sweep.parameter);
  spec.values = cfg.sweep.values.empty() ? SweepSpec::defaults(spec.parameter, cfg.sweep.points).values
                                         : cfg.sweep.values;
  SweepContext sc;
  sc.climate = p.inputs.climate;
  sc.load = p.inputs.load;
  sc.base = p.spec;
  sc.weights = cfg.weights;
  sc.mode = cfg.design_mode;
  sc.space = space_of(cfg);
  sc.solver = cfg.solver.name;
  sc.budget = budget_of(cfg);
  const auto rows = run_sweep(spec, sc);
  write_sweep_csv(opts.out_dir / ("sweep_" + cfg.sweep.parameter + ".csv"), rows);
  json out = json::array();
  for (const auto& r : rows) {
    json e{{"value", r.value}, {"ok", r.ok}};
    if (r.ok) {
      e["design"] = design_json(r.design);
      e["objectives"] = objectives_json(r.objectives);
      e["weighted_objective"] = r.weighted;
      e["dg_hours"] = r.dg_hours;
      e["bs_cycles"] = r.bs_cycles;
      e["lcoe_usd_per_kwh"] = r.lcoe_usd;
    } else {
      e["error"] = r.error;
    }
    out.push_back(e);
  }
  return {{"parameter", cfg.sweep.parameter}, {"rows", out}};
}

json cmd_breakeven(const RunConfig& cfg, const RunOptions&) {
  const auto& b = cfg.breakeven;
  json j;
  double tac = 0.0, crf_value = 0.0, load_kwh = 0.0;
  if (b.tac_usd && b.crf && b.annual_load_kwh) {
    tac = *b.tac_usd;
    crf_value = *b.crf;
    load_kwh = *b.annual_load_kwh;
  } else {
    const Prepared p = prepare(cfg);
    const SimulationContext ctx(p.inputs.climate, p.inputs.load, p.spec);
    const SizingResult sized = run_sizing(cfg, ctx);
    tac = b.tac_usd.value_or(sized.sim.costs.tac);
    crf_value = b.crf.value_or(sized.sim.costs.crf);
    load_kwh = b.annual_load_kwh.value_or(sized.sim.load_kwh * 8760.0 / static_cast<double>(ctx.hours()));
    j["sizing"] = sizing_json(sized, cfg);
  }
  j["tac_usd"] = tac;
  j["crf"] = crf_value;
  j["annual_load_kwh"] = load_kwh;
  j["grid_lcoe_usd_per_kwh"] = b.grid_lcoe_usd_per_kwh;
  j["extension_cost_usd_per_km"] = b.extension_cost_usd_per_km;
  j["break_even_distance_km"] =
      break_even_distance(tac, crf_value, load_kwh, b.grid_lcoe_usd_per_kwh, b.extension_cost_usd_per_km);
  return j;
}

json cmd_bench(const RunConfig& cfg, const RunOptions& opts) {
  const Prepared p = prepare(cfg);
  const SimulationContext ctx(p.inputs.climate, p.inputs.load, p.spec);
  const DesignMode mode = cfg.design_mode;
  const Weights w = cfg.weights;
  const ObjectiveFn f = [&](std::span<const double> x) { return sizing_objective(design_from_point(x, mode), ctx, w); };
  const auto rows = solver_benchmark(f, space_of(cfg), opts.solvers, budget_of(cfg));
  write_benchmark_csv(opts.out_dir / "benchmark.csv", rows);
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"solver", r.solver},
                   {"runtime_s", r.runtime_s},
                   {"min_obj", r.best_value},
                   {"overall", r.overall},
                   {"evaluations", r.evaluations},
                   {"best_point", r.best_point}});
  }
  return {{"rows", out}};
}

json run_command(const std::string& command, const RunConfig& cfg, const RunOptions& opts) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = command;
  doc["seed"] = cfg.seed ? json(*cfg.seed) : json(nullptr);
  RunConfig resolved = cfg;
  try {
    resolved.data = resolve_data_paths(cfg.data, std::filesystem::current_path());
    doc["config"] = config_to_json(resolved);
    std::filesystem::create_directories(opts.out_dir);
    json body;
    if (command == "simulate") body = cmd_simulate(resolved, opts);
    else if (command == "size") body = cmd_size(resolved, opts);
    else if (command == "dispatch") body = cmd_dispatch(resolved, opts);
    else if (command == "pareto") body = cmd_pareto(resolved, opts);
    else if (command == "sweep") body = cmd_sweep(resolved, opts);
    else if (command == "breakeven") body = cmd_breakeven(resolved, opts);
    else if (command == "bench") body = cmd_bench(resolved, opts);
    else throw InputError("unknown command '" + command + "'");
    doc["status"] = "ok";
    doc["result"] = body;
  } catch (const Error& e) {
    doc["status"] = "error";
    doc["error"] = {{"kind", e.kind()}, {"message", e.what()}};
  } catch (const std::exception& e) {
    doc["status"] = "error";
    doc["error"] = {{"kind", "error"}, {"message", e.what()}};
  }
  return doc;
}

}  // namespace hybridgrid
