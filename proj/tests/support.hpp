#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include "hybridgrid/annual_sim.hpp"
#include "hybridgrid/config.hpp"
#include "hybridgrid/workflows.hpp"

namespace testing {

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("hybridgrid_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

/// Bundled year, loaded once.
inline const hybridgrid::Inputs& bundled() {
  static const hybridgrid::Inputs in = hybridgrid::load_inputs(hybridgrid::DataConfig{}, 1);
  return in;
}

inline const hybridgrid::SimulationContext& bundled_context() {
  static const hybridgrid::SimulationContext ctx(bundled().climate, bundled().load, hybridgrid::RunConfig{}.system());
  return ctx;
}

}  // namespace testing
