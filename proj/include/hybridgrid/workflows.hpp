#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hybridgrid/config.hpp"
#include "hybridgrid/data_ingest.hpp"

namespace hybridgrid {

/// Climate and load after gap filling, wind correction and load generation.
struct Inputs {
  ClimateSeries climate;
  LoadSeries load;
};

/// `seed` drives the "load-gen" sub-stream when the annual load is generated.
Inputs load_inputs(const DataConfig& data, std::uint64_t seed);

/// Day (0-based) with the largest total demand; ties go to the earliest.
std::size_t peak_load_day(const LoadSeries& load);

struct DayInputs {
  std::size_t day = 0;
  ClimateSeries climate;
  LoadSeries load;
};

DayInputs day_inputs(const Inputs& in, std::size_t day);

/// Options that come from the command line rather than the config.
struct RunOptions {
  std::filesystem::path out_dir = ".";
  std::vector<std::string> solvers{"pso", "ga", "sa", "ps", "ms", "gs"};
};

/// Each command writes its CSVs into opts.out_dir and returns the body of
/// the result document. The seed must be set in cfg.
nlohmann::json cmd_simulate(const RunConfig& cfg, const RunOptions& opts);
nlohmann::json cmd_size(const RunConfig& cfg, const RunOptions& opts);
nlohmann::json cmd_dispatch(const RunConfig& cfg, const RunOptions& opts);
nlohmann::json cmd_pareto(const RunConfig& cfg, const RunOptions& opts);
nlohmann::json cmd_sweep(const RunConfig& cfg, const RunOptions& opts);
nlohmann::json cmd_breakeven(const RunConfig& cfg, const RunOptions& opts);
nlohmann::json cmd_bench(const RunConfig& cfg, const RunOptions& opts);

/// Runs `command` and wraps its output in a result document carrying the
/// schema version, status, seed and the resolved config. Errors become an
/// error document with status "error"; nothing is thrown.
nlohmann::json run_command(const std::string& command, const RunConfig& cfg, const RunOptions& opts);

}  // namespace hybridgrid
