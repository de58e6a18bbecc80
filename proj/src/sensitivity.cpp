#include "hybridgrid/sensitivity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>

#include "hybridgrid/error.hpp"

namespace hybridgrid {

namespace {

constexpr std::array<const char*, 10> kNames{"dg_rated",  "fuel_price", "nominal_rate", "inflation", "bs_price",
                                             "w1",        "w2",         "w3",           "w4",        "w5"};

bool is_weight(SweepParameter p) { return static_cast<int>(p) >= static_cast<int>(SweepParameter::W1); }

std::size_t weight_index(SweepParameter p) {
  return static_cast<std::size_t>(static_cast<int>(p) - static_cast<int>(SweepParameter::W1));
}

Overrides override_for(SweepParameter p, double v) {
  Overrides o;
  switch (p) {
    case SweepParameter::DgRated: o.dg_rated_kw = v; break;
    case SweepParameter::FuelPrice: o.fuel_price = v; break;
    case SweepParameter::NominalRate: o.nominal_rate = v; break;
    case SweepParameter::Inflation: o.inflation = v; break;
    case SweepParameter::BsPrice: o.bs_price_per_kwh = v; break;
    default: break;
  }
  return o;
}

Baseline fixed_baseline(const SweepContext& ctx) { return baseline_metrics(ctx.load, ctx.base); }

}  // namespace

std::string to_string(SweepParameter p) { return kNames[static_cast<std::size_t>(p)]; }

SweepParameter parse_sweep_parameter(const std::string& name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (name == kNames[i]) return static_cast<SweepParameter>(i);
  }
  throw DomainError("unknown sweep parameter '" + name + "'");
}

void SweepSpec::validate() const {
  if (values.empty()) throw DomainError("sweep needs at least one value");
  if (!std::is_sorted(values.begin(), values.end())) throw DomainError("sweep values must be sorted");
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) throw DomainError("sweep values must be finite and >= 0");
    if (is_weight(parameter) && v > 1.0) throw DomainError("weight sweep values must lie in [0, 1]");
  }
}

SweepSpec SweepSpec::defaults(SweepParameter p, std::size_t points) {
  if (points < 2) throw DomainError("a default sweep needs at least 2 points");
  double lo = 0.0;
  double hi = 1.0;
  switch (p) {
    case SweepParameter::DgRated: hi = 20.0; break;
    case SweepParameter::FuelPrice: lo = 0.2; hi = 12.0; break;
    case SweepParameter::NominalRate: hi = 0.20; break;
    case SweepParameter::Inflation: hi = 0.15; break;
    case SweepParameter::BsPrice: lo = 50.0; hi = 300.0; break;
    default: break;
  }
  SweepSpec s{p, {}};
  for (std::size_t k = 0; k < points; ++k) {
    s.values.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1));
  }
  return s;
}

SystemSpec Overrides::apply(SystemSpec spec) const {
  if (dg_rated_kw) spec.generator.rated_power = *dg_rated_kw;
  if (fuel_price) spec.generator.fuel_price = *fuel_price;
  if (nominal_rate) spec.finance.nominal_rate = *nominal_rate;
  if (inflation) spec.finance.inflation = *inflation;
  if (bs_price_per_kwh) spec.battery.costs.capital_per_kwh = *bs_price_per_kwh;
  spec.validate();
  return spec;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const SweepContext& ctx) {
  spec.validate();
  const Baseline base = fixed_baseline(ctx);
  const SearchSpace space = ctx.space ? *ctx.space : default_sizing_space(ctx.mode, ctx.base);
  std::vector<SweepRow> rows(spec.values.size());

#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < rows.size(); ++k) {
    SweepRow& row = rows[k];
    row.value = spec.values[k];
    try {
      Weights w = ctx.weights;
      if (is_weight(spec.parameter)) w = Weights::sweep(5, weight_index(spec.parameter), row.value);
      const SystemSpec s = override_for(spec.parameter, row.value).apply(ctx.base);
      const SimulationContext sim_ctx(ctx.climate, ctx.load, s, base);
      const SizingResult r = size_system(sim_ctx, w, ctx.solver, space, ctx.mode, ctx.budget);
      row.design = r.design;
      row.objectives = r.sim.objectives;
      row.dg_hours = r.sim.dg_online_hours;
      row.bs_cycles = r.sim.battery_cycles;
      row.weighted = r.weighted;
      row.lcoe_usd = r.sim.costs.lcoe;
      row.emissions_kg = r.sim.emissions_kg;
      row.ok = true;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  }
  return rows;
}

FixedDesignEval objective_at_fixed_design(const Design& design, const Overrides& overrides, const SweepContext& ctx) {
  const SimulationContext sim_ctx(ctx.climate, ctx.load, overrides.apply(ctx.base), fixed_baseline(ctx));
  const SimResult r = simulate_year(design, sim_ctx);
  return {r.objectives, r.costs.lcoe, r.emissions_kg, weighted_objective(r.objectives, ctx.weights)};
}

void write_sweep_csv(const std::filesystem::path& path, std::span<const SweepRow> rows) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out.precision(10);
  out << "value,n_s,n_w,e_b,lcoe_norm,em_norm,dpsp,repg,one_minus_ref,dg_hours,bs_cycles,weighted_obj\n";
  for (const auto& r : rows) {
    out << r.value << ',';
    if (!r.ok) {
      // Failed points keep their row with empty cells.
      out << ",,,,,,,,,,\n";
      continue;
    }
    const auto& o = r.objectives;
    out << r.design.pv << ',' << r.design.wt << ',' << r.design.battery_kwh << ',' << o.lcoe_norm << ',' << o.em_norm
        << ',' << o.dpsp << ',' << o.repg << ',' << o.one_minus_ref << ',' << r.dg_hours << ',' << r.bs_cycles << ','
        << r.weighted << '\n';
  }
}

}  // namespace hybridgrid
