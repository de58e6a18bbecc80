#pragma once

#include <span>
#include <string>
#include <vector>

#include "hybridgrid/annual_sim.hpp"
#include "hybridgrid/global_opt.hpp"

namespace hybridgrid {

/// Default bounds: [0, 0, 0] to [100, 30, 200] for counts, and the same
/// rated powers ([0, 0, 0] to [25.5, 105, 200]) for capacities.
SearchSpace default_sizing_space(DesignMode mode, const SystemSpec& spec);

Design design_from_point(std::span<const double> x, DesignMode mode);

struct SizingResult {
  Design design;
  SimResult sim;
  SolverReport report;
  double weighted = 0.0;
};

/// Minimizes the weighted sizing objective with the named solver.
SizingResult size_system(const SimulationContext& ctx, const Weights& weights, const std::string& solver,
                         const SearchSpace& space, DesignMode mode, const SolverBudget& budget);

/// Five-objective Pareto set of the sizing problem.
std::vector<ParetoPoint> pareto_sizing(const SimulationContext& ctx, const SearchSpace& space, DesignMode mode,
                                       const ParetoParams& params);

}  // namespace hybridgrid
