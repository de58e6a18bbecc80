#include "hybridgrid/dispatch_opt.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>

#include "hybridgrid/annual_sim.hpp"
#include "hybridgrid/batch_eval.hpp"
#include "hybridgrid/devices.hpp"
#include "hybridgrid/error.hpp"
#include "hybridgrid/rng.hpp"

namespace hybridgrid {

namespace {

constexpr double kTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

double diesel_fuel_online(double p, const GeneratorSpec& g) {
  // Online engine: the rated-power term applies even at zero output.
  return de_fuel_cost(g.fuel_coeff_a * p + g.fuel_coeff_b * g.rated_power, g.fuel_price);
}

/// Daily share of fixed O&M for the sized system.
double daily_fixed_om(const DispatchContext& ctx) {
  const CapitalBreakdown ic = initial_capital(ctx.design, ctx.spec);
  const double annual = ctx.spec.costs.pv_om_fixed_fraction * ic.pv + ctx.spec.costs.wt_om_fixed_fraction * ic.wt +
                        ctx.spec.battery.costs.om_fixed_fraction * ic.battery +
                        ctx.spec.generator.costs.om_fixed_fraction * ic.generator;
  return annual / 365.0;
}

}  // namespace

DispatchContext DispatchContext::make(const SystemSpec& spec, const Design& design, const ClimateSeries& day,
                                      const LoadSeries& day_load, Weights weights, double dpsp_max,
                                      std::optional<double> initial_soc, double baseline_rated_kw) {
  spec.validate();
  design.validate();
  weights.validate(4);
  if (!(dpsp_max >= 0.0 && dpsp_max <= 1.0)) throw DomainError("dpsp_max must lie in [0, 1]");
  const DenseClimate dense = densify(day);
  if (dense.size() != day_load.size() || dense.size() == 0) {
    throw InputError("dispatch climate and load must have the same non-zero length");
  }
  DispatchContext ctx;
  ctx.spec = spec;
  ctx.design = design;
  ctx.weights = std::move(weights);
  ctx.dpsp_max = dpsp_max;
  ctx.initial_soc = initial_soc.value_or(spec.battery.soc_max);
  if (!(ctx.initial_soc >= spec.battery.soc_min && ctx.initial_soc <= spec.battery.soc_max)) {
    throw DomainError("initial SOC outside [soc_min, soc_max]");
  }
  const double n_pv = design.pv_modules(spec.pv);
  const double n_wt = design.wt_turbines(spec.wind);
  for (std::size_t t = 0; t < dense.size(); ++t) {
    const double load = day_load.demand_kw[t];
    if (!std::isfinite(load) || load < 0.0) throw InputError("invalid load at hour " + std::to_string(t));
    ctx.p_pv.push_back(pv_power(n_pv, dense.irradiance[t], dense.temperature[t], spec.pv));
    ctx.p_wt.push_back(wt_power(n_wt, hub_wind_speed(dense.wind_speed[t], dense.ref_height, spec.wind), spec.wind));
    ctx.p_res.push_back(ctx.p_pv.back() + ctx.p_wt.back() * spec.converter.eta_rec);
    ctx.load.push_back(load);
  }

  // Generator-only supply of the same day.
  GeneratorSpec g = spec.generator;
  g.rated_power = std::max(baseline_rated_kw, day_load.peak_kw());
  const double total = day_load.total_kwh();
  double cost = g.costs.startup_cost + g.costs.shutdown_cost +
                g.costs.om_fixed_fraction * g.costs.capital_per_kw * g.rated_power / 365.0;
  for (double l : ctx.load) {
    if (g.kind == GeneratorKind::Diesel) {
      cost += diesel_fuel_online(l, g) + g.costs.om_variable;
    } else {
      cost += g.fuel_price * mt_fuel_mmbtu(l, g) + g.costs.om_variable * l;
    }
  }
  ctx.coe_base = total > 0.0 ? cost / total : 0.0;
  ctx.em_base = emissions_total(total, g);
  return ctx;
}

DispatchEvaluation evaluate_schedule(const DispatchSchedule& s, const DispatchContext& ctx) {
  const std::size_t n = ctx.hours();
  if (s.p_dg.size() != n || s.p_bs.size() != n) throw InputError("schedule length differs from the dispatch horizon");
  const auto& spec = ctx.spec;
  const auto& bat = spec.battery;
  const auto& g = spec.generator;
  const double eta_inv = spec.converter.eta_inv;
  const double eta_rec = spec.converter.eta_rec;
  const double e_cap = ctx.design.battery_kwh;
  const double p_lim = ctx.battery_power_limit();

  DispatchEvaluation e;
  e.soc.resize(n + 1);
  e.dump.resize(n);
  e.lost.resize(n);
  e.soc[0] = ctx.initial_soc;
  double fuel = 0.0;
  double om_var = 0.0;
  double dg_energy = 0.0;
  double res_dc = 0.0;
  double pv_wt_dc = 0.0;
  double dg_dc = 0.0;
  double load_total = 0.0;
  bool on_prev = false;
  for (std::size_t t = 0; t < n; ++t) {
    const double p_dg = s.p_dg[t];
    const double p_bs = s.p_bs[t];
    if (p_dg != 0.0) {
      if (p_dg < 0.0) e.dg_violation += -p_dg;
      else if (p_dg < g.min_power() - kTol) e.dg_violation += g.min_power() - p_dg;
      if (p_dg > g.rated_power + kTol) e.dg_violation += p_dg - g.rated_power;
    }
    if (e_cap > 0.0) {
      e.bs_violation += std::max(0.0, std::abs(p_bs) - p_lim - kTol);
      e.soc[t + 1] = battery_step_floored(e.soc[t], p_bs, e_cap, bat);
    } else {
      e.bs_violation += std::abs(p_bs);
      e.soc[t + 1] = e.soc[t];
    }
    const double residual = ctx.p_res[t] + p_dg * eta_rec + p_bs - ctx.load[t] / eta_inv;
    e.dump[t] = std::max(residual, 0.0);
    e.lost[t] = std::max(-residual, 0.0) * eta_inv;

    const bool on = p_dg > 0.0;
    if (on && !on_prev) e.dg_startups += 1.0;
    if (!on && on_prev) e.dg_shutdowns += 1.0;
    on_prev = on;
    if (on) {
      const double p = std::min(p_dg, g.rated_power);
      fuel += g.kind == GeneratorKind::Diesel ? diesel_fuel_online(p, g) : g.fuel_price * mt_fuel_mmbtu(p, g);
      om_var += g.kind == GeneratorKind::Diesel ? g.costs.om_variable : g.costs.om_variable * p;
      dg_energy += p_dg;
    }
    res_dc += ctx.p_res[t];
    pv_wt_dc += ctx.p_pv[t] + ctx.p_wt[t] * eta_rec;
    dg_dc += std::max(p_dg, 0.0) * eta_rec;
    load_total += ctx.load[t];
  }
  if (on_prev) e.dg_shutdowns += 1.0;
  for (double soc : e.soc) {
    e.soc_violation += std::max(0.0, bat.soc_min - soc - kTol) + std::max(0.0, soc - bat.soc_max - kTol);
  }

  e.c_daily = fuel + om_var + g.costs.startup_cost * e.dg_startups + g.costs.shutdown_cost * e.dg_shutdowns +
              daily_fixed_om(ctx);
  const double lost_total = std::accumulate(e.lost.begin(), e.lost.end(), 0.0);
  const double dump_total = std::accumulate(e.dump.begin(), e.dump.end(), 0.0);
  e.coe = load_total > 0.0 ? e.c_daily / load_total : 0.0;
  e.coe_norm = ctx.coe_base > 0.0 ? e.coe / ctx.coe_base : 0.0;
  e.emissions_kg = emissions_total(dg_energy, g);
  e.em_norm = ctx.em_base > 0.0 ? e.emissions_kg / ctx.em_base : 0.0;
  e.dpsp = load_total > 0.0 ? lost_total / load_total : 0.0;
  const double gen = res_dc + dg_dc;
  e.repg = gen > 0.0 ? dump_total / gen : 0.0;
  e.ref = gen > 0.0 ? pv_wt_dc / gen : 0.0;
  e.dpsp_violation = std::max(0.0, e.dpsp - ctx.dpsp_max);
  const auto& w = ctx.weights.w;
  e.weighted = w[0] * e.coe_norm + w[1] * e.em_norm + w[2] * e.repg + w[3] * (1.0 - e.ref);
  e.reported_objective = 0.2 * (e.coe_norm + e.em_norm + e.dpsp + e.repg + (1.0 - e.ref));
  e.feasible = e.dg_violation <= kTol && e.bs_violation <= kTol && e.soc_violation <= kTol && e.dpsp_violation <= kTol;
  return e;
}

DispatchSchedule rule_based_schedule(const DispatchContext& ctx) {
  const std::size_t n = ctx.hours();
  const auto& bat = ctx.spec.battery;
  const double e_cap = ctx.design.battery_kwh;
  const double p_lim = ctx.battery_power_limit();
  DispatchSchedule s;
  s.soc.push_back(ctx.initial_soc);
  for (std::size_t t = 0; t < n; ++t) {
    double p_ch_max = 0.0;
    double p_dis_max = 0.0;
    double leaked = s.soc.back();
    if (e_cap > 0.0) {
      leaked = battery_leak(s.soc.back(), bat);
      p_ch_max = std::clamp((bat.soc_max - leaked) * e_cap / bat.round_trip_eff, 0.0, p_lim);
      p_dis_max = std::clamp((leaked - bat.soc_min) * e_cap / bat.round_trip_eff, 0.0, p_lim);
    }
    const HourDispatch h = rule_based_hour(ctx.p_res[t], ctx.load[t], p_ch_max, p_dis_max, ctx.spec);
    s.p_dg.push_back(h.p_dg);
    s.p_bs.push_back(h.p_bs);
    s.soc.push_back(e_cap > 0.0 ? battery_step_floored(s.soc.back(), h.p_bs, e_cap, bat) : s.soc.back());
  }
  s.feasible = evaluate_schedule(s, ctx).feasible;
  return s;
}

DispatchSchedule constant_schedule(const DispatchContext& ctx, double p_dg, double p_bs) {
  const auto& g = ctx.spec.generator;
  const double dg = p_dg <= 0.0 || g.rated_power <= 0.0 ? 0.0 : std::clamp(p_dg, g.min_power(), g.rated_power);
  const double lim = ctx.design.battery_kwh > 0.0 ? ctx.battery_power_limit() : 0.0;
  DispatchSchedule s;
  s.p_dg.assign(ctx.hours(), dg);
  s.p_bs.assign(ctx.hours(), std::clamp(p_bs, -lim, lim));
  const DispatchEvaluation e = evaluate_schedule(s, ctx);
  s.soc = e.soc;
  s.feasible = e.feasible;
  return s;
}

namespace {

using Pattern = std::uint32_t;

struct Candidate {
  DispatchSchedule schedule;
  DispatchEvaluation eval;
  double score = kInf;
};

class DayOptimizer {
 public:
  DayOptimizer(const DispatchContext& ctx, const DispatchParams& params) : ctx_(ctx), p_(params) {
    n_ = ctx.hours();
    e_cap_ = ctx.design.battery_kwh;
    p_lim_ = e_cap_ > 0.0 ? ctx.battery_power_limit() : 0.0;
    has_dg_ = ctx.spec.generator.rated_power > 0.0;
  }

  double score(const DispatchEvaluation& e) const {
    return e.weighted + p_.dpsp_penalty * e.dpsp_violation +
           1e3 * (e.dg_violation + e.bs_violation + e.soc_violation);
  }

  Candidate make_candidate(DispatchSchedule s) const {
    Candidate c;
    c.eval = evaluate_schedule(s, ctx_);
    s.soc = c.eval.soc;
    s.feasible = c.eval.feasible;
    c.schedule = std::move(s);
    c.score = score(c.eval);
    return c;
  }

  /// Maps raw setpoints onto the pattern and the hourly battery window.
  DispatchSchedule project(Pattern pattern, const std::vector<double>& dg_raw, const std::vector<double>& bs_raw) const {
    const auto& g = ctx_.spec.generator;
    const auto& bat = ctx_.spec.battery;
    DispatchSchedule s;
    s.p_dg.resize(n_);
    s.p_bs.resize(n_);
    double soc = ctx_.initial_soc;
    for (std::size_t t = 0; t < n_; ++t) {
      const bool on = has_dg_ && ((pattern >> t) & 1u);
      s.p_dg[t] = on ? std::clamp(dg_raw[t], g.min_power(), g.rated_power) : 0.0;
      if (e_cap_ > 0.0) {
        const double leaked = battery_leak(soc, bat);
        const double hi = std::clamp((leaked - bat.soc_min) * e_cap_ / bat.round_trip_eff, 0.0, p_lim_);
        const double lo = -std::clamp((bat.soc_max - leaked) * e_cap_ / bat.round_trip_eff, 0.0, p_lim_);
        s.p_bs[t] = std::clamp(bs_raw[t], lo, hi);
        soc = leaked - s.p_bs[t] * bat.round_trip_eff / e_cap_;
      } else {
        s.p_bs[t] = 0.0;
      }
    }
    return s;
  }

  /// Battery setpoints that follow the net residual given the DG setpoints.
  std::vector<double> follower(const std::vector<double>& p_dg) const {
    std::vector<double> bs(n_);
    for (std::size_t t = 0; t < n_; ++t) {
      bs[t] = ctx_.load[t] / ctx_.spec.converter.eta_inv - ctx_.p_res[t] - p_dg[t] * ctx_.spec.converter.eta_rec;
    }
    return bs;
  }

  std::vector<double> default_dg(Pattern pattern, const std::vector<double>& hint) const {
    const auto& g = ctx_.spec.generator;
    std::vector<double> dg(n_, 0.0);
    for (std::size_t t = 0; t < n_; ++t) {
      if (!has_dg_ || !((pattern >> t) & 1u)) continue;
      double v = hint[t];
      if (v <= 0.0) {
        const double deficit = ctx_.load[t] / ctx_.spec.converter.eta_inv - ctx_.p_res[t];
        v = deficit / ctx_.spec.converter.eta_rec;
      }
      dg[t] = std::clamp(v, g.min_power(), g.rated_power);
    }
    return dg;
  }

  /// Setpoints of a fixed pattern. Phase 1 searches the DG levels with the
  /// battery greedily following the residual; phase 2 refines both by
  /// projected coordinate descent, including balance-preserving DG/battery
  /// pairs.
  Candidate inner(Pattern pattern, const std::vector<double>& dg_hint, const std::vector<double>& bs_hint) const {
    const double eta_rec = ctx_.spec.converter.eta_rec;
    std::vector<std::size_t> free_dg;
    for (std::size_t t = 0; t < n_; ++t) {
      if (has_dg_ && ((pattern >> t) & 1u)) free_dg.push_back(t);
    }
    std::size_t evals = 0;
    auto eval = [&](const std::vector<double>& dg, const std::vector<double>& bs) {
      ++evals;
      return make_candidate(project(pattern, dg, bs));
    };
    auto follow = [&](const std::vector<double>& dg) { return eval(dg, follower(dg)); };

    const std::vector<double> dg0 = default_dg(pattern, dg_hint);
    Candidate best = eval(dg0, bs_hint);
    for (const auto& start : {dg0, default_dg(pattern, std::vector<double>(n_, ctx_.spec.generator.rated_power))}) {
      Candidate c = follow(start);
      if (c.score < best.score) best = std::move(c);
    }

    const std::size_t phase1 = p_.inner_max_evals / 2;
    std::vector<double> x_dg = best.schedule.p_dg;
    for (double h = 2.0; h >= 1e-3 && !free_dg.empty() && evals < phase1;) {
      bool improved = false;
      for (std::size_t t : free_dg) {
        for (double dir : {1.0, -1.0}) {
          if (evals >= phase1) break;
          std::vector<double> trial = x_dg;
          trial[t] += dir * h;
          Candidate c = follow(trial);
          if (c.score < best.score - 1e-12) {
            best = std::move(c);
            x_dg = best.schedule.p_dg;
            improved = true;
            break;
          }
        }
      }
      if (!improved) h *= 0.5;
    }

    x_dg = best.schedule.p_dg;
    std::vector<double> x_bs = best.schedule.p_bs;
    auto try_move = [&](std::size_t t, double d_dg, double d_bs) {
      std::vector<double> dg = x_dg;
      std::vector<double> bs = x_bs;
      dg[t] += d_dg;
      bs[t] += d_bs;
      Candidate c = eval(dg, bs);
      if (c.score < best.score - 1e-12) {
        best = std::move(c);
        x_dg = best.schedule.p_dg;
        x_bs = best.schedule.p_bs;
        return true;
      }
      return false;
    };
    for (double h = 1.0; h >= 1e-3 && evals < p_.inner_max_evals;) {
      bool improved = false;
      for (std::size_t t = 0; t < n_ && evals < p_.inner_max_evals; ++t) {
        const bool dg_free = has_dg_ && ((pattern >> t) & 1u);
        for (double dir : {1.0, -1.0}) {
          if (dg_free && try_move(t, dir * h, 0.0)) { improved = true; break; }
          if (e_cap_ > 0.0 && try_move(t, 0.0, dir * h)) { improved = true; break; }
          if (dg_free && e_cap_ > 0.0 && try_move(t, dir * h, -dir * h * eta_rec)) { improved = true; break; }
        }
      }
      if (!improved) h *= 0.5;
    }
    return best;
  }

  Candidate run_pattern(Pattern pattern, const Candidate& from) const {
    return inner(pattern, from.schedule.p_dg, from.schedule.p_bs);
  }

  std::size_t hours() const { return n_; }
  bool has_dg() const { return has_dg_; }

 private:
  const DispatchContext& ctx_;
  DispatchParams p_;
  std::size_t n_ = 0;
  double e_cap_ = 0.0;
  double p_lim_ = 0.0;
  bool has_dg_ = false;
};

Pattern pattern_of(const DispatchSchedule& s) {
  Pattern p = 0;
  for (std::size_t t = 0; t < s.p_dg.size(); ++t) {
    if (s.p_dg[t] > 0.0) p |= 1u << t;
  }
  return p;
}

}  // namespace

DispatchResult optimize_day(const DispatchContext& ctx, const DispatchParams& params,
                            const std::optional<DispatchSchedule>& initial) {
  if (ctx.hours() == 0 || ctx.hours() > 32) throw DomainError("dispatch horizon must be 1..32 hours");
  DayOptimizer opt(ctx, params);
  const std::size_t n = ctx.hours();
  const Pattern all_on = n == 32 ? 0xffffffffu : ((1u << n) - 1u);

  DispatchResult out;
  const DispatchSchedule rule = rule_based_schedule(ctx);
  const Candidate rule_c = opt.make_candidate(rule);
  out.rule_based = rule_c.eval;

  std::map<Pattern, Candidate> seen;
  Candidate best = rule_c;
  auto consider = [&](const Candidate& c) {
    if (c.score < best.score) best = c;
  };
  auto evaluate_patterns = [&](const std::vector<Pattern>& patterns, const Candidate& from) {
    std::vector<Candidate> results(patterns.size());
    std::vector<std::vector<double>> idx(patterns.size(), std::vector<double>{0.0});
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i][0] = static_cast<double>(i);
    ObjectiveFn one = [&](std::span<const double> k) {
      const auto i = static_cast<std::size_t>(k[0]);
      results[i] = opt.run_pattern(patterns[i], from);
      return results[i].score;
    };
    evaluate_batch(one, idx, params.workers);
    for (std::size_t i = 0; i < patterns.size(); ++i) {
      auto it = seen.find(patterns[i]);
      if (it == seen.end() || results[i].score < it->second.score) seen[patterns[i]] = results[i];
      consider(results[i]);
    }
    out.patterns_evaluated += patterns.size();
    return results;
  };

  // Seeds: rule-based pattern, the constant initial guess, everything off.
  std::vector<Candidate> seeds;
  seeds.push_back(rule_c);
  seeds.push_back(opt.make_candidate(constant_schedule(ctx, params.initial_dg_kw, params.initial_bs_kw)));
  if (initial) seeds.push_back(opt.make_candidate(*initial));
  for (const auto& s : seeds) consider(s);
  std::vector<Pattern> seed_patterns{pattern_of(rule), opt.has_dg() ? all_on : 0u, 0u};
  if (initial) seed_patterns.push_back(pattern_of(*initial));
  std::vector<Candidate> refined;
  for (std::size_t i = 0; i < seed_patterns.size(); ++i) {
    const Candidate& from = seeds[std::min(i, seeds.size() - 1)];
    refined.push_back(evaluate_patterns({seed_patterns[i]}, from).front());
  }

  Candidate current = *std::min_element(refined.begin(), refined.end(),
                                         [](const Candidate& a, const Candidate& b) { return a.score < b.score; });

  if (opt.has_dg()) {
    // Bit-flip descent on the DG pattern.
    for (std::size_t round = 0; round < 4 * n; ++round) {
      const Pattern base = pattern_of(current.schedule);
      std::vector<Pattern> flips;
      for (std::size_t t = 0; t < n; ++t) flips.push_back(base ^ (1u << t));
      const auto results = evaluate_patterns(flips, current);
      const auto it = std::min_element(results.begin(), results.end(),
                                       [](const Candidate& a, const Candidate& b) { return a.score < b.score; });
      if (it->score < current.score - 1e-12) {
        current = *it;
      } else {
        break;
      }
    }

    // Annealing over patterns from the descent result.
    Engine eng = make_engine(params.seed, "solver");
    double temperature = 0.02;
    Candidate state = current;
    for (std::size_t k = 0; k < params.anneal_patterns; ++k) {
      Pattern p = pattern_of(state.schedule);
      const std::size_t flips = 1 + uniform_index(eng, 2);
      for (std::size_t f = 0; f < flips; ++f) p ^= 1u << uniform_index(eng, n);
      const double u = uniform01(eng);
      Candidate c;
      if (auto it = seen.find(p); it != seen.end()) {
        c = it->second;
      } else {
        c = evaluate_patterns({p}, state).front();
      }
      if (u < std::exp(-(c.score - state.score) / temperature)) state = std::move(c);
      temperature *= 0.985;
    }
  }

  // The rule-based schedule is kept whenever it is feasible and no worse.
  if (rule_c.eval.feasible && rule_c.eval.weighted <= best.eval.weighted) best = rule_c;
  if (!best.eval.feasible) {
    for (const auto& [pat, c] : seen) {
      if (c.eval.feasible && (!best.eval.feasible || c.eval.weighted < best.eval.weighted)) best = c;
    }
  }
  out.schedule = best.schedule;
  out.evaluation = best.eval;
  out.feasible = best.eval.feasible;
  if (!out.feasible) {
    out.message = "no feasible schedule found; best DPSP " + std::to_string(best.eval.dpsp) + " exceeds " +
                  std::to_string(ctx.dpsp_max);
  }
  return out;
}

ClimateSeries scenario_scale_climate(const ClimateSeries& day, double irr_factor, double wind_factor) {
  if (!(irr_factor >= 0.0) || !(wind_factor >= 0.0)) throw DomainError("scenario factors must be >= 0");
  ClimateSeries out = day;
  for (auto& v : out.irradiance) {
    if (v) *v *= irr_factor;
  }
  for (auto& v : out.wind_speed) {
    if (v) *v *= wind_factor;
  }
  return out;
}

std::vector<ScenarioOutcome> robustness_suite(const SystemSpec& spec, const Design& design, const ClimateSeries& day,
                                              const LoadSeries& day_load, std::span<const Scenario> scenarios,
                                              const DispatchParams& params, Weights weights, double dpsp_max,
                                              double baseline_rated_kw) {
  if (scenarios.empty()) throw DomainError("robustness suite needs at least one scenario");
  std::vector<ScenarioOutcome> rows;
  for (const auto& sc : scenarios) {
    ScenarioOutcome row;
    row.name = sc.name;
    try {
      const ClimateSeries c = scenario_scale_climate(day, sc.irr_factor, sc.wind_factor);
      const DispatchContext ctx = DispatchContext::make(spec, design, c, sc.load ? *sc.load : day_load, weights,
                                                        dpsp_max, std::nullopt, baseline_rated_kw);
      row.result = optimize_day(ctx, params);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Scenario> default_scenarios(const SystemSpec& spec, const Design& design, const ClimateSeries& day,
                                        const LoadSeries& day_load, std::uint64_t seed) {
  const DispatchContext base = DispatchContext::make(spec, design, day, day_load);
  std::vector<Scenario> out;
  out.push_back({"baseline", 1.0, 1.0, std::nullopt});
  out.push_back({"low_solar", 0.1, 1.0, std::nullopt});
  out.push_back({"low_wind", 1.0, 0.1, std::nullopt});
  out.push_back({"low_solar_low_wind", 0.1, 0.1, std::nullopt});
  out.push_back({"peaky_load", 1.0, 1.0, make_peaky_load(day_load, 0.3, substream_seed(seed, "scenario"))});
  out.push_back({"flat_load", 1.0, 1.0, flatten_load(day_load, base.p_res, 0.0)});
  out.push_back({"flat_load_curtailed", 1.0, 1.0, flatten_load(day_load, base.p_res, 0.10)});
  return out;
}

void write_schedule_csv(const std::filesystem::path& path, const DispatchSchedule& s, const DispatchEvaluation& e,
                        const DispatchContext& ctx) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out.precision(10);
  out << "hour,p_dg,p_bs,soc,p_res,load,dump,lost\n";
  for (std::size_t t = 0; t < s.hours(); ++t) {
    out << t << ',' << s.p_dg[t] << ',' << s.p_bs[t] << ',' << e.soc[t] << ',' << ctx.p_res[t] << ','
        << ctx.load[t] << ',' << e.dump[t] << ',' << e.lost[t] << '\n';
  }
}

void write_scenario_csv(const std::filesystem::path& path, std::span<const ScenarioOutcome> rows) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out.precision(10);
  out << "scenario,min_obj,coe,emissions,dpsp,dump,ref,weighted,feasible,error\n";
  for (const auto& r : rows) {
    const auto& e = r.result.evaluation;
    out << r.name << ',';
    if (!r.error.empty()) {
      out << ",,,,,,,false,\"" << r.error << "\"\n";
      continue;
    }
    out << e.reported_objective << ',' << e.coe_norm << ',' << e.em_norm << ',' << e.dpsp << ',' << e.repg << ','
        << e.ref << ',' << e.weighted << ',' << (r.result.feasible ? "true" : "false") << ",\n";
  }
}

}  // namespace hybridgrid
