#include "hybridgrid/sizing.hpp"

#include "hybridgrid/error.hpp"

namespace hybridgrid {

SearchSpace default_sizing_space(DesignMode mode, const SystemSpec& spec) {
  if (mode == DesignMode::IntegerCounts) return SearchSpace{{0, 0, 0}, {100, 30, 200}, {true, true, false}};
  return SearchSpace{
      {0, 0, 0}, {100 * spec.pv.rated_power, 30 * spec.wind.rated_power, 200}, {false, false, false}};
}

Design design_from_point(std::span<const double> x, DesignMode mode) {
  if (x.size() != 3) throw DomainError("a design point has 3 coordinates");
  return Design{mode, x[0], x[1], x[2]};
}

SizingResult size_system(const SimulationContext& ctx, const Weights& weights, const std::string& solver,
                         const SearchSpace& space, DesignMode mode, const SolverBudget& budget) {
  weights.validate(5);
  const ObjectiveFn f = [&](std::span<const double> x) {
    return sizing_objective(design_from_point(x, mode), ctx, weights);
  };
  SizingResult out;
  out.report = run_solver(solver, f, space, budget);
  out.design = design_from_point(out.report.best_point, mode);
  out.sim = simulate_year(out.design, ctx);
  out.weighted = weighted_objective(out.sim.objectives, weights);
  return out;
}

std::vector<ParetoPoint> pareto_sizing(const SimulationContext& ctx, const SearchSpace& space, DesignMode mode,
                                       const ParetoParams& params) {
  const VectorObjectiveFn f = [&](std::span<const double> x) {
    return simulate_year(design_from_point(x, mode), ctx).objectives.as_vector();
  };
  return pareto_front(f, space, params);
}

}  // namespace hybridgrid
