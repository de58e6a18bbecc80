#include "hybridgrid/config.hpp"

#include <fstream>
#include <set>
#include <type_traits>
#include <utility>

#include "hybridgrid/error.hpp"

#ifndef HYBRIDGRID_DATA_DIR
#define HYBRIDGRID_DATA_DIR "data"
#endif

namespace hybridgrid {

using nlohmann::json;

namespace {

/// Reads into or writes from the same field list, so both directions stay
/// in sync. In read mode every key must be consumed.
class Binder {
 public:
  Binder(bool reading, json& node, std::string path) : reading_(reading), node_(node), path_(std::move(path)) {
    if (reading_ && !node_.is_object()) throw SchemaError(where() + " must be an object");
    if (!reading_ && node_.is_null()) node_ = json::object();
  }

  ~Binder() noexcept(false) {
    if (!reading_ || std::uncaught_exceptions() > 0) return;
    for (const auto& [key, value] : node_.items()) {
      if (!seen_.count(key)) throw SchemaError("unknown config key '" + join(key) + "'");
    }
  }

  bool reading() const { return reading_; }

  void field(const char* key, double& v) {
    if (const json* j = take(key)) {
      if (!j->is_number()) throw ParseError(join(key) + " must be a number");
      v = j->get<double>();
    } else if (!reading_) {
      node_[key] = v;
    }
  }

  void field(const char* key, bool& v) {
    if (const json* j = take(key)) {
      if (!j->is_boolean()) throw ParseError(join(key) + " must be true or false");
      v = j->get<bool>();
    } else if (!reading_) {
      node_[key] = v;
    }
  }

  void field(const char* key, std::string& v) {
    if (const json* j = take(key)) {
      if (!j->is_string()) throw ParseError(join(key) + " must be a string");
      v = j->get<std::string>();
    } else if (!reading_) {
      node_[key] = v;
    }
  }

  template <class Int>
    requires std::is_integral_v<Int>
  void field(const char* key, Int& v) {
    if (const json* j = take(key)) {
      if (!j->is_number_integer()) throw ParseError(join(key) + " must be an integer");
      if (std::is_unsigned_v<Int> && !j->is_number_unsigned() && j->get<std::int64_t>() < 0) {
        throw DomainError(join(key) + " must be >= 0");
      }
      v = j->get<Int>();
    } else if (!reading_) {
      node_[key] = v;
    }
  }

  template <class T>
  void field(const char* key, std::optional<T>& v) {
    if (reading_) {
      if (!node_.contains(key)) return;
      if (node_[key].is_null()) {
        seen_.insert(key);
        v.reset();
        return;
      }
      T tmp{};
      field(key, tmp);
      v = tmp;
    } else if (v) {
      field(key, *v);
    }
  }

  void field(const char* key, std::vector<double>& v) {
    if (const json* j = take(key)) {
      if (!j->is_array()) throw ParseError(join(key) + " must be an array of numbers");
      v.clear();
      for (const auto& e : *j) {
        if (!e.is_number()) throw ParseError(join(key) + " must be an array of numbers");
        v.push_back(e.get<double>());
      }
    } else if (!reading_) {
      node_[key] = v;
    }
  }

  void field(const char* key, std::vector<std::string>& v) {
    if (const json* j = take(key)) {
      if (!j->is_array()) throw ParseError(join(key) + " must be an array of strings");
      v.clear();
      for (const auto& e : *j) {
        if (!e.is_string()) throw ParseError(join(key) + " must be an array of strings");
        v.push_back(e.get<std::string>());
      }
    } else if (!reading_) {
      node_[key] = v;
    }
  }

  template <class E>
  void choice(const char* key, E& v, std::initializer_list<std::pair<const char*, E>> names) {
    if (const json* j = take(key)) {
      if (!j->is_string()) throw ParseError(join(key) + " must be a string");
      const std::string s = j->get<std::string>();
      for (const auto& [name, value] : names) {
        if (s == name) {
          v = value;
          return;
        }
      }
      std::string allowed;
      for (const auto& [name, value] : names) allowed += std::string(allowed.empty() ? "" : ", ") + name;
      throw DomainError(join(key) + " must be one of " + allowed + " (got '" + s + "')");
    } else if (!reading_) {
      for (const auto& [name, value] : names) {
        if (value == v) node_[key] = name;
      }
    }
  }

  template <class F>
  void object(const char* key, F&& body) {
    if (reading_) {
      if (!node_.contains(key)) return;
      seen_.insert(key);
      Binder sub(true, node_[key], join(key));
      body(sub);
    } else {
      Binder sub(false, node_[key], join(key));
      body(sub);
    }
  }

 private:
  const json* take(const char* key) {
    if (!reading_ || !node_.contains(key)) return nullptr;
    seen_.insert(key);
    return &node_[key];
  }

  std::string join(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  std::string where() const { return path_.empty() ? "config" : path_; }

  bool reading_;
  json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

void bind_battery(Binder& b, BatterySpec& s) {
  b.field("soc_min_fraction", s.soc_min);
  b.field("soc_max_fraction", s.soc_max);
  b.field("self_discharge_per_month_fraction", s.self_discharge_monthly);
  b.field("round_trip_eff_fraction", s.round_trip_eff);
  b.field("lifetime_years", s.lifetime_years);
  b.field("lifetime_cycles", s.lifetime_cycles);
  b.field("rated_power_per_unit_kw", s.rated_power_per_unit);
  b.field("unit_energy_kwh", s.unit_energy);
  b.field("fade_per_cycle_fraction", s.fade_per_cycle);
  b.field("replacement_threshold_fraction", s.replacement_threshold);
  b.choice("power_mode", s.power_mode,
           {{"proportional", BatteryPowerMode::Proportional}, {"fixed", BatteryPowerMode::Fixed}});
  b.field("capital_usd_per_kwh", s.costs.capital_per_kwh);
  b.field("replacement_cost_fraction", s.costs.replacement_fraction);
  b.field("om_fixed_fraction_per_year", s.costs.om_fixed_fraction);
}

void bind_generator(Binder& b, GeneratorSpec& g) {
  const bool diesel = g.kind == GeneratorKind::Diesel;
  b.field("rated_power_kw", g.rated_power);
  b.field("min_fraction", g.min_fraction);
  if (diesel) {
    b.field("fuel_coeff_a_l_per_kwh", g.fuel_coeff_a);
    b.field("fuel_coeff_b_l_per_kwh", g.fuel_coeff_b);
    b.field("fuel_price_usd_per_gal", g.fuel_price);
    b.field("om_variable_usd_per_h", g.costs.om_variable);
  } else {
    b.field("fuel_slope_mmbtu_per_kwh", g.mt_fuel_slope);
    b.field("fuel_price_usd_per_mmbtu", g.fuel_price);
    b.field("om_variable_usd_per_kwh", g.costs.om_variable);
  }
  b.field("lifetime_hours", g.lifetime_hours);
  b.field("capital_usd_per_kw", g.costs.capital_per_kw);
  b.field("replacement_cost_fraction", g.costs.replacement_fraction);
  b.field("om_fixed_fraction_per_year", g.costs.om_fixed_fraction);
  b.field("startup_cost_usd", g.costs.startup_cost);
  b.field("shutdown_cost_usd", g.costs.shutdown_cost);
  b.object("emissions", [&](Binder& e) {
    e.field("co2_kg_per_kwh", g.emissions.co2_kg);
    e.field("co_g_per_kwh", g.emissions.co_g);
    e.field("nox_g_per_kwh", g.emissions.nox_g);
    e.field("so2_g_per_kwh", g.emissions.so2_g);
    e.field("voc_g_per_kwh", g.emissions.voc_g);
    e.field("pm_g_per_kwh", g.emissions.pm_g);
    e.field("pm25_g_per_kwh", g.emissions.pm25_g);
    e.field("pm10_g_per_kwh", g.emissions.pm10_g);
  });
}

void bind(Binder& b, RunConfig& c) {
  b.field("schema_version", c.schema_version);
  b.field("seed", c.seed);
  b.field("workers", c.workers);

  b.object("data", [&](Binder& d) {
    d.field("climate_csv", c.data.climate_csv);
    d.field("load_csv", c.data.load_csv);
    d.field("ref_height_m", c.data.ref_height_m);
    d.field("neighbor_csvs", c.data.neighbor_csvs);
    d.field("wind_correction_factor", c.data.wind_correction_factor);
    d.field("daily_load_csv", c.data.daily_load_csv);
    d.field("load_variation_fraction", c.data.load_variation_fraction);
  });

  b.object("pv", [&](Binder& p) {
    p.field("eta_ref_fraction", c.pv.eta_ref);
    p.field("eta_pc_fraction", c.pv.eta_pc);
    p.field("temp_ref_c", c.pv.temp_ref);
    p.field("irr_noct_kw_per_m2", c.pv.irr_noct);
    p.field("temp_cell_noct_c", c.pv.temp_cell_noct);
    p.field("temp_amb_noct_c", c.pv.temp_amb_noct);
    p.field("beta_per_c", c.pv.beta);
    p.field("rated_power_kw", c.pv.rated_power);
    p.field("collector_area_m2", c.pv.collector_area);
    p.field("capital_usd_per_kw", c.costs.pv_capital_per_kw);
    p.field("om_fixed_fraction_per_year", c.costs.pv_om_fixed_fraction);
    p.field("lifetime_years", c.finance.pv_lifetime);
  });

  b.object("wind", [&](Binder& w) {
    w.field("hub_height_m", c.wind.hub_height);
    w.field("rated_power_kw", c.wind.rated_power);
    w.field("cut_in_m_per_s", c.wind.cut_in);
    w.field("rated_speed_m_per_s", c.wind.rated_speed);
    w.field("cut_out_m_per_s", c.wind.cut_out);
    w.field("shear_exponent", c.wind.shear_exponent);
    w.field("printed_coefficients", c.wind.printed_coefficients);
    w.field("capital_usd_per_kw", c.costs.wt_capital_per_kw);
    w.field("om_fixed_fraction_per_year", c.costs.wt_om_fixed_fraction);
    w.field("lifetime_years", c.finance.wt_lifetime);
  });

  b.object("battery", [&](Binder& bt) {
    bt.choice("chemistry", c.chemistry, {{"lithium_ion", Chemistry::LithiumIon}, {"lead_acid", Chemistry::LeadAcid}});
    bt.object("lithium_ion", [&](Binder& s) { bind_battery(s, c.lithium_ion); });
    bt.object("lead_acid", [&](Binder& s) { bind_battery(s, c.lead_acid); });
  });

  b.object("generator", [&](Binder& g) {
    g.choice("kind", c.generator_kind, {{"diesel", GeneratorKind::Diesel}, {"microturbine", GeneratorKind::Microturbine}});
    g.object("diesel", [&](Binder& s) { bind_generator(s, c.diesel); });
    g.object("microturbine", [&](Binder& s) { bind_generator(s, c.microturbine); });
  });

  b.object("converter", [&](Binder& v) {
    v.field("eta_inv_fraction", c.converter.eta_inv);
    v.field("eta_rec_fraction", c.converter.eta_rec);
    v.field("rated_power_kw", c.converter.rated_power);
    v.field("capital_usd", c.converter.capital_cost);
    v.field("lifetime_years", c.converter.lifetime_years);
  });

  b.object("finance", [&](Binder& f) {
    f.field("nominal_rate_fraction", c.finance.nominal_rate);
    f.field("inflation_fraction", c.finance.inflation);
    f.field("system_lifetime_years", c.finance.system_lifetime);
  });

  b.object("strategy", [&](Binder& s) {
    s.field("dg_may_charge_battery", c.strategy.dg_may_charge_battery);
    s.choice("battery_replacement", c.strategy.battery_replacement,
             {{"fixed_interval", ReplacementPolicy::FixedInterval}, {"cycle_count", ReplacementPolicy::CycleCount}});
    s.choice("cycle_counting", c.cycle_counting,
             {{"reversals", CycleCounting::Reversals}, {"equivalent_full_cycles", CycleCounting::EquivalentFullCycles}});
  });

  b.object("sizing", [&](Binder& s) {
    s.choice("design_mode", c.design_mode,
             {{"counts", DesignMode::IntegerCounts}, {"capacities", DesignMode::ContinuousCapacities}});
    s.field("design", c.design);
    s.field("weights", c.weights.w);
    if (s.reading()) {
      std::optional<std::vector<double>> lower, upper;
      s.field("lower", lower);
      s.field("upper", upper);
      if (lower || upper) {
        if (!lower || !upper) throw SchemaError("sizing.lower and sizing.upper must be given together");
        const bool counts = c.design_mode == DesignMode::IntegerCounts;
        c.search_space = SearchSpace{*lower, *upper, {counts, counts, false}};
      }
    } else if (c.search_space) {
      s.field("lower", c.search_space->lower);
      s.field("upper", c.search_space->upper);
    }
  });

  b.object("solver", [&](Binder& s) {
    s.field("name", c.solver.name);
    s.field("max_evals", c.solver.max_evals);
    s.field("stall_tolerance", c.solver.stall_tolerance);
    s.field("stall_iterations", c.solver.stall_iterations);
  });

  b.object("dispatch", [&](Binder& d) {
    d.field("weights", c.dispatch.weights.w);
    d.field("dpsp_max_fraction", c.dispatch.dpsp_max_fraction);
    d.field("baseline_rated_kw", c.dispatch.baseline_rated_kw);
    d.field("day", c.dispatch.day);
    d.field("inner_max_evals", c.dispatch.inner_max_evals);
    d.field("anneal_patterns", c.dispatch.anneal_patterns);
    d.field("dpsp_penalty", c.dispatch.dpsp_penalty);
    d.field("initial_dg_kw", c.dispatch.initial_dg_kw);
    d.field("initial_bs_kw", c.dispatch.initial_bs_kw);
    d.field("scenarios", c.dispatch.scenarios);
  });

  b.object("pareto", [&](Binder& p) {
    p.field("population", c.pareto.population);
    p.field("generations", c.pareto.generations);
    p.field("crossover_rate", c.pareto.crossover_rate);
    p.field("sbx_eta", c.pareto.sbx_eta);
    p.field("mutation_eta", c.pareto.mutation_eta);
  });

  b.object("sweep", [&](Binder& s) {
    s.field("parameter", c.sweep.parameter);
    s.field("values", c.sweep.values);
    s.field("points", c.sweep.points);
  });

  b.object("breakeven", [&](Binder& s) {
    s.field("grid_lcoe_usd_per_kwh", c.breakeven.grid_lcoe_usd_per_kwh);
    s.field("extension_cost_usd_per_km", c.breakeven.extension_cost_usd_per_km);
    s.field("tac_usd", c.breakeven.tac_usd);
    s.field("crf", c.breakeven.crf);
    s.field("annual_load_kwh", c.breakeven.annual_load_kwh);
  });
}

void check(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace

SystemSpec RunConfig::system() const {
  SystemSpec s;
  s.pv = pv;
  s.wind = wind;
  s.battery = chemistry == Chemistry::LithiumIon ? lithium_ion : lead_acid;
  s.generator = generator_kind == GeneratorKind::Diesel ? diesel : microturbine;
  s.converter = converter;
  s.costs = costs;
  s.finance = finance;
  s.strategy = strategy;
  s.cycle_counting = cycle_counting;
  return s;
}

void RunConfig::validate() const {
  check(schema_version == kSchemaVersion, "schema_version must be " + std::to_string(kSchemaVersion));
  check(workers >= 0, "workers must be >= 0");
  lithium_ion.validate();
  lead_acid.validate();
  diesel.validate();
  microturbine.validate();
  system().validate();
  check(data.ref_height_m > 0.0, "data.ref_height_m must be > 0");
  check(data.wind_correction_factor > 0.0, "data.wind_correction_factor must be > 0");
  check(data.load_variation_fraction >= 0.0 && data.load_variation_fraction < 1.0,
        "data.load_variation_fraction must lie in [0, 1)");
  try {
    weights.validate(5);
  } catch (const DomainError& e) {
    throw DomainError(std::string("sizing.weights: ") + e.what());
  }
  try {
    dispatch.weights.validate(4);
  } catch (const DomainError& e) {
    throw DomainError(std::string("dispatch.weights: ") + e.what());
  }
  if (design) {
    check(design->size() == 3, "sizing.design must have 3 entries");
    design_from_values(*design);
  }
  if (search_space) {
    check(search_space->dim() == 3, "sizing.lower and sizing.upper must have 3 entries");
    search_space->validate();
  }
  static const std::set<std::string> solvers{"pso", "ga", "sa", "ps", "ms", "gs"};
  check(solvers.count(solver.name) == 1, "solver.name must be one of pso, ga, sa, ps, ms, gs");
  check(solver.max_evals >= 1, "solver.max_evals must be >= 1");
  check(dispatch.dpsp_max_fraction >= 0.0 && dispatch.dpsp_max_fraction <= 1.0,
        "dispatch.dpsp_max_fraction must lie in [0, 1]");
  check(dispatch.day.value_or(0) < 365, "dispatch.day must lie in [0, 364]");
  check(pareto.population >= 4 && pareto.generations >= 1, "pareto.population >= 4 and pareto.generations >= 1");
  check(breakeven.grid_lcoe_usd_per_kwh > 0.0, "breakeven.grid_lcoe_usd_per_kwh must be > 0");
  check(breakeven.extension_cost_usd_per_km > 0.0, "breakeven.extension_cost_usd_per_km must be > 0");
}

Design RunConfig::design_from_values(const std::vector<double>& v) const {
  Design d{design_mode, v.at(0), v.at(1), v.at(2)};
  d.validate();
  return d;
}

RunConfig config_from_json(const json& doc) {
  RunConfig c;
  json copy = doc;
  {
    Binder b(true, copy, "");
    bind(b, c);
  }
  c.validate();
  return c;
}

json config_to_json(const RunConfig& cfg) {
  RunConfig c = cfg;
  json out = json::object();
  {
    Binder b(false, out, "");
    bind(b, c);
  }
  return out;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("config " + path.string() + ": " + e.what());
  }
  RunConfig c = config_from_json(doc);
  const DataConfig resolved = resolve_data_paths(c.data, path.parent_path());
  auto must_exist = [](const std::string& p) {
    if (!p.empty() && !std::filesystem::exists(p)) throw InputError("data file not found: " + p);
  };
  must_exist(resolved.climate_csv);
  must_exist(resolved.load_csv);
  must_exist(resolved.daily_load_csv);
  for (const auto& p : resolved.neighbor_csvs) must_exist(p);
  c.data = resolved;
  return c;
}

std::filesystem::path bundled_data_dir() { return HYBRIDGRID_DATA_DIR; }

DataConfig resolve_data_paths(const DataConfig& data, const std::filesystem::path& base_dir) {
  DataConfig d = data;
  auto abs = [&](std::string& p) {
    if (p.empty()) return;
    std::filesystem::path q(p);
    if (q.is_relative()) q = base_dir / q;
    p = std::filesystem::absolute(q).lexically_normal().string();
  };
  if (d.climate_csv.empty()) d.climate_csv = (bundled_data_dir() / "timbila_2018.csv").string();
  if (d.load_csv.empty() && d.daily_load_csv.empty()) d.load_csv = (bundled_data_dir() / "load_2018.csv").string();
  abs(d.climate_csv);
  abs(d.load_csv);
  abs(d.daily_load_csv);
  for (auto& p : d.neighbor_csvs) abs(p);
  return d;
}

}  // namespace hybridgrid
