#include "hybridgrid/annual_sim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "hybridgrid/devices.hpp"
#include "hybridgrid/error.hpp"

namespace hybridgrid {

namespace {

constexpr double kEps = 1e-12;

}  // namespace

void SimTraces::reserve(std::size_t n) {
  for (auto* v : {&p_pv, &p_wt, &p_res, &p_dg, &p_bs, &soc, &p_dump, &p_lost, &load}) v->reserve(n);
}

HourDispatch rule_based_hour(double p_res, double load, double p_ch_max, double p_dis_max, const SystemSpec& spec) {
  const double eta_inv = spec.converter.eta_inv;
  const double eta_rec = spec.converter.eta_rec;
  const double p_rated = spec.generator.rated_power;
  HourDispatch h;
  double deficit = 0.0;  // DC
  const double net = p_res - load / eta_inv;
  if (net >= 0.0) {
    const double c = std::min(net, p_ch_max);
    h.p_bs = -c;
    h.dump = net - c;
    return h;
  }
  deficit = -net;
  const double d = std::min(deficit, p_dis_max);
  h.p_bs = d;
  deficit -= d;
  if (deficit > kEps && p_rated > 0.0) {
    h.p_dg = std::max(std::min(deficit / eta_rec, p_rated), spec.generator.min_power());
    const double supplied = h.p_dg * eta_rec;
    if (supplied >= deficit) {
      double surplus = supplied - deficit;
      deficit = 0.0;
      if (spec.strategy.dg_may_charge_battery) {
        const double cut = std::min(surplus, h.p_bs);
        h.p_bs -= cut;
        surplus -= cut;
        if (surplus > 0.0 && h.p_bs <= 0.0) {
          const double c = std::min(surplus, p_ch_max);
          h.p_bs = -c;
          surplus -= c;
        }
      }
      h.dump = surplus;
    } else {
      deficit -= supplied;
    }
  }
  // round-off below kEps is not unserved load
  h.lost = deficit > kEps ? deficit * eta_inv : 0.0;
  return h;
}

SimulationContext::SimulationContext(const ClimateSeries& climate, LoadSeries load, SystemSpec spec,
                                     std::optional<Baseline> baseline)
    : spec_(std::move(spec)), load_(std::move(load)) {
  spec_.validate();
  const DenseClimate dense = densify(climate);
  if (dense.size() != load_.size()) {
    throw InputError("climate has " + std::to_string(dense.size()) + " hours but load has " +
                     std::to_string(load_.size()));
  }
  if (load_.size() == 0) throw InputError("empty simulation horizon");
  for (std::size_t t = 0; t < load_.size(); ++t) {
    const double l = load_.demand_kw[t];
    if (!std::isfinite(l) || l < 0.0) throw InputError("invalid load at hour " + std::to_string(t));
  }
  pv_unit_.resize(dense.size());
  wt_unit_.resize(dense.size());
  for (std::size_t t = 0; t < dense.size(); ++t) {
    pv_unit_[t] = pv_power(1.0, dense.irradiance[t], dense.temperature[t], spec_.pv);
    wt_unit_[t] = wt_power(1.0, hub_wind_speed(dense.wind_speed[t], dense.ref_height, spec_.wind), spec_.wind);
  }
  baseline_ = baseline ? *baseline : baseline_metrics(load_, spec_);
}

SimResult simulate_year(const Design& design, const SimulationContext& ctx, bool keep_traces,
                        std::optional<double> initial_soc) {
  design.validate();
  const SystemSpec& spec = ctx.spec();
  const auto& bat = spec.battery;
  const auto& gen = spec.generator;
  const double eta_rec = spec.converter.eta_rec;
  const double eta_bs = bat.round_trip_eff;
  const bool efc = spec.cycle_counting == CycleCounting::EquivalentFullCycles;

  const double n_pv = design.pv_modules(spec.pv);
  const double n_wt = design.wt_turbines(spec.wind);
  const double e_init = design.battery_kwh;
  const bool has_battery = e_init > 0.0;

  const auto pv_unit = ctx.pv_unit();
  const auto wt_unit = ctx.wt_unit();
  const auto& demand = ctx.load().demand_kw;
  const std::size_t n = ctx.hours();

  SimResult r;
  if (keep_traces) {
    r.traces.emplace();
    r.traces->reserve(n);
  }

  double soc = initial_soc.value_or(bat.soc_max);
  if (!(soc >= bat.soc_min && soc <= bat.soc_max)) throw InputError("initial SOC outside [soc_min, soc_max]");
  double cycles = 0.0;
  double throughput = 0.0;
  int last_dir = 0;  // -1 charging, +1 discharging
  bool dg_on = false;
  double sum_dg_dc = 0.0;
  double sum_res_dc = 0.0;
  double sum_pv_wt_dc = 0.0;
  r.min_soc = soc;
  r.max_soc = soc;

  for (std::size_t t = 0; t < n; ++t) {
    const double p_pv = n_pv * pv_unit[t];
    const double p_wt = n_wt * wt_unit[t];
    const double p_res = p_pv + p_wt * eta_rec;
    const double load = demand[t];
    const double soc_start = soc;

    double capacity = 0.0;
    double p_ch_max = 0.0;
    double p_dis_max = 0.0;
    double soc_leaked = soc;
    if (has_battery) {
      const double used_cycles = efc ? throughput / (2.0 * e_init * (bat.soc_max - bat.soc_min)) : cycles;
      capacity = battery_capacity(e_init, used_cycles, bat);
      soc_leaked = battery_leak(soc, bat);
      const double p_lim = bat.power_limit(capacity);
      p_ch_max = std::clamp((bat.soc_max - soc_leaked) * capacity / eta_bs, 0.0, p_lim);
      p_dis_max = std::clamp((soc_leaked - bat.soc_min) * capacity / eta_bs, 0.0, p_lim);
    }

    const HourDispatch h = rule_based_hour(p_res, load, p_ch_max, p_dis_max, spec);
    const double p_bs = h.p_bs;
    const double p_dg = h.p_dg;
    const double dump = h.dump;
    const double lost = h.lost;

    if (has_battery) {
      soc = std::clamp(soc_leaked - p_bs * eta_bs / capacity, bat.soc_min, bat.soc_max);
      if (std::abs(p_bs) > kEps) {
        const int dir = p_bs > 0.0 ? 1 : -1;
        if (dir == 1 && last_dir == -1) cycles += 1.0;
        last_dir = dir;
        throughput += std::abs(p_bs);
      }
    }

    const bool on = p_dg > 0.0;
    if (on && !dg_on) r.dg_startups += 1.0;
    if (!on && dg_on) r.dg_shutdowns += 1.0;
    dg_on = on;
    if (on) {
      r.dg_online_hours += 1.0;
      r.dg_energy_kwh += p_dg;
      r.dg_fuel_cost += generator_fuel_cost(p_dg, gen);
    }

    r.pv_energy_kwh += p_pv;
    r.wt_energy_kwh += p_wt;
    r.dump_kwh += dump;
    r.lost_kwh += lost;
    r.load_kwh += load;
    sum_dg_dc += p_dg * eta_rec;
    sum_res_dc += p_res;
    sum_pv_wt_dc += p_pv + p_wt * eta_rec;
    r.min_soc = std::min(r.min_soc, soc);
    r.max_soc = std::max(r.max_soc, soc);

    if (keep_traces) {
      auto& tr = *r.traces;
      tr.p_pv.push_back(p_pv);
      tr.p_wt.push_back(p_wt);
      tr.p_res.push_back(p_res);
      tr.p_dg.push_back(p_dg);
      tr.p_bs.push_back(p_bs);
      tr.soc.push_back(soc_start);
      tr.p_dump.push_back(dump);
      tr.p_lost.push_back(lost);
      tr.load.push_back(load);
    }
  }
  if (dg_on) r.dg_shutdowns += 1.0;
  if (!has_battery) {
    r.min_soc = bat.soc_max;
    r.max_soc = bat.soc_max;
  }
  r.battery_cycles = efc && has_battery ? throughput / (2.0 * e_init * (bat.soc_max - bat.soc_min)) : cycles;
  r.final_capacity_kwh = has_battery ? battery_capacity(e_init, r.battery_cycles, bat) : 0.0;

  // Costing is annual; other horizons are scaled.
  const double annualize = 8760.0 / static_cast<double>(n);
  OperatingTotals ops;
  ops.dg_online_hours = r.dg_online_hours * annualize;
  ops.dg_energy_kwh = r.dg_energy_kwh * annualize;
  ops.dg_fuel_cost = r.dg_fuel_cost * annualize;
  ops.dg_startups = r.dg_startups;
  ops.dg_shutdowns = r.dg_shutdowns;
  ops.battery_cycles = r.battery_cycles * annualize;
  ops.load_kwh = r.load_kwh * annualize;
  r.costs = lifecycle_costs(design, ops, spec);
  r.emissions_kg = emissions_total(ops.dg_energy_kwh, gen);

  const Baseline& base = ctx.baseline();
  auto& obj = r.objectives;
  obj.lcoe_norm = r.costs.lcoe / base.lcoe;
  obj.em_norm = base.emissions_kg > 0.0 ? r.emissions_kg / base.emissions_kg : 0.0;
  obj.dpsp = r.load_kwh > 0.0 ? r.lost_kwh / r.load_kwh : 0.0;
  const double gen_dc = sum_res_dc + sum_dg_dc;
  obj.repg = gen_dc > 0.0 ? r.dump_kwh / gen_dc : 0.0;
  obj.one_minus_ref = gen_dc > 0.0 ? 1.0 - sum_pv_wt_dc / gen_dc : 1.0;
  return r;
}

double sizing_objective(const Design& design, const SimulationContext& ctx, const Weights& weights) {
  return weighted_objective(simulate_year(design, ctx).objectives, weights);
}

std::vector<std::size_t> power_balance_violations(const SimTraces& tr, const ConverterSpec& conv, double tol) {
  std::vector<std::size_t> bad;
  for (std::size_t t = 0; t < tr.size(); ++t) {
    const double residual = tr.p_res[t] + tr.p_dg[t] * conv.eta_rec + tr.p_bs[t] - tr.load[t] / conv.eta_inv -
                            tr.p_dump[t] + tr.p_lost[t] / conv.eta_inv;
    if (!(std::abs(residual) <= tol)) bad.push_back(t);
  }
  return bad;
}

bool hourly_power_balance_check(const SimTraces& traces, const ConverterSpec& conv, double tol) {
  return power_balance_violations(traces, conv, tol).empty();
}

void write_trace_csv(const std::filesystem::path& path, const SimTraces& tr) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out.precision(10);
  out << "hour,p_pv,p_wt,p_dg,p_bs,soc,p_dump,p_lost,load\n";
  for (std::size_t t = 0; t < tr.size(); ++t) {
    out << t << ',' << tr.p_pv[t] << ',' << tr.p_wt[t] << ',' << tr.p_dg[t] << ',' << tr.p_bs[t] << ','
        << tr.soc[t] << ',' << tr.p_dump[t] << ',' << tr.p_lost[t] << ',' << tr.load[t] << '\n';
  }
}

}  // namespace hybridgrid
