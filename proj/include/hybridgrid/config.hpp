#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hybridgrid/dispatch_opt.hpp"
#include "hybridgrid/economics.hpp"
#include "hybridgrid/global_opt.hpp"
#include "hybridgrid/system.hpp"

namespace hybridgrid {

inline constexpr int kSchemaVersion = 1;

/// Input files. Empty paths mean the bundled data set.
struct DataConfig {
  std::string climate_csv;
  std::string load_csv;
  double ref_height_m = 1.0;
  /// When set, gaps in climate_csv are filled from these stations.
  std::vector<std::string> neighbor_csvs;
  double wind_correction_factor = 1.0;
  /// When set (and load_csv is empty), the annual load is generated from this 24 h profile.
  std::string daily_load_csv;
  double load_variation_fraction = 0.2;
};

struct SolverConfig {
  std::string name = "pso";
  std::size_t max_evals = 10000;
  double stall_tolerance = 1e-6;
  std::size_t stall_iterations = 50;
};

struct DispatchConfig {
  Weights weights = Weights::equal(4);
  double dpsp_max_fraction = 0.01;
  double baseline_rated_kw = 16.0;
  /// Day of year (0-based); default is the day with the largest load.
  std::optional<std::size_t> day;
  std::size_t inner_max_evals = 4000;
  std::size_t anneal_patterns = 300;
  double dpsp_penalty = 100.0;
  double initial_dg_kw = 7.0;
  double initial_bs_kw = 1.0;
  bool scenarios = true;
};

struct ParetoConfig {
  std::size_t population = 60;
  std::size_t generations = 50;
  double crossover_rate = 0.9;
  double sbx_eta = 15.0;
  double mutation_eta = 20.0;
};

struct SweepConfig {
  std::string parameter = "fuel_price";
  /// Empty means the default range for the parameter.
  std::vector<double> values;
  std::size_t points = 6;
};

struct BreakevenConfig {
  double grid_lcoe_usd_per_kwh = 0.125;
  double extension_cost_usd_per_km = 157470.0;
  /// When all three are set no sizing run is needed.
  std::optional<double> tac_usd;
  std::optional<double> crf;
  std::optional<double> annual_load_kwh;
};

struct RunConfig {
  int schema_version = kSchemaVersion;
  std::optional<std::uint64_t> seed;
  int workers = 0;
  DataConfig data;

  PvSpec pv{};
  WindSpec wind{};
  Chemistry chemistry = Chemistry::LithiumIon;
  BatterySpec lithium_ion = BatterySpec::lithium_ion();
  BatterySpec lead_acid = BatterySpec::lead_acid();
  GeneratorKind generator_kind = GeneratorKind::Diesel;
  GeneratorSpec diesel = GeneratorSpec::diesel();
  GeneratorSpec microturbine = GeneratorSpec::microturbine();
  ConverterSpec converter{};
  CostTable costs{};
  FinancialParams finance{};
  StrategyConfig strategy{};
  CycleCounting cycle_counting = CycleCounting::Reversals;

  DesignMode design_mode = DesignMode::IntegerCounts;
  /// Fixed design for simulate/dispatch; sized first when absent.
  std::optional<std::vector<double>> design;
  std::optional<SearchSpace> search_space;
  Weights weights = Weights::equal(5);
  SolverConfig solver;
  DispatchConfig dispatch;
  ParetoConfig pareto;
  SweepConfig sweep;
  BreakevenConfig breakeven;

  /// Specification with the active battery chemistry and generator kind.
  SystemSpec system() const;
  /// Design in `design_mode` from three values; validated.
  Design design_from_values(const std::vector<double>& v) const;
  void validate() const;
};

/// Parses and validates a config document. Unknown keys raise SchemaError
/// naming the key; invalid values raise DomainError naming the field.
RunConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const RunConfig& cfg);

/// Reads a JSON config file. Relative data paths are resolved against the
/// file's directory and must exist.
RunConfig load_config(const std::filesystem::path& path);

/// Absolute paths for every data file, bundled defaults filled in.
DataConfig resolve_data_paths(const DataConfig& data, const std::filesystem::path& base_dir);

std::filesystem::path bundled_data_dir();

}  // namespace hybridgrid
