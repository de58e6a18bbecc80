#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hybridgrid/annual_sim.hpp"
#include "hybridgrid/sizing.hpp"

namespace hybridgrid {

enum class SweepParameter { DgRated, FuelPrice, NominalRate, Inflation, BsPrice, W1, W2, W3, W4, W5 };

std::string to_string(SweepParameter p);
SweepParameter parse_sweep_parameter(const std::string& name);

struct SweepSpec {
  SweepParameter parameter = SweepParameter::FuelPrice;
  std::vector<double> values;

  /// Values must be non-empty and sorted; weight values lie in [0, 1].
  void validate() const;
  /// Default ranges: DG 0-20 kW, fuel $0.2-12/gal, rate 0-20%, inflation
  /// 0-15%, battery $50-300/kWh, weights 0-1.
  static SweepSpec defaults(SweepParameter p, std::size_t points = 6);
};

/// Parameter overrides applied on top of a base specification.
struct Overrides {
  std::optional<double> dg_rated_kw;
  std::optional<double> fuel_price;
  std::optional<double> nominal_rate;
  std::optional<double> inflation;
  std::optional<double> bs_price_per_kwh;

  SystemSpec apply(SystemSpec spec) const;
};

struct SweepRow {
  double value = 0.0;
  Design design;
  ObjectiveVector objectives;
  double dg_hours = 0.0;
  double bs_cycles = 0.0;
  double weighted = 0.0;
  double lcoe_usd = 0.0;
  double emissions_kg = 0.0;
  bool ok = false;
  std::string error;
};

/// Inputs shared by every sweep point. The normalization baseline is fixed
/// at the base specification so objectives stay comparable across points.
struct SweepContext {
  ClimateSeries climate;
  LoadSeries load;
  SystemSpec base;
  Weights weights = Weights::equal(5);
  DesignMode mode = DesignMode::IntegerCounts;
  std::optional<SearchSpace> space;
  std::string solver = "pso";
  SolverBudget budget;
};

/// Re-optimizes the design at every value with the same solver, budget and
/// seed. A failed point yields a row with ok = false; the sweep continues.
/// Rows are ordered by value.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const SweepContext& ctx);

/// One simulation of `design` under overridden parameters, no optimization.
struct FixedDesignEval {
  ObjectiveVector objectives;
  double lcoe_usd = 0.0;
  double emissions_kg = 0.0;
  double weighted = 0.0;
};

FixedDesignEval objective_at_fixed_design(const Design& design, const Overrides& overrides, const SweepContext& ctx);

void write_sweep_csv(const std::filesystem::path& path, std::span<const SweepRow> rows);

}  // namespace hybridgrid
