#pragma once

#include <functional>
#include <span>
#include <vector>

#include "hybridgrid/annual_sim.hpp"

namespace hybridgrid {

/// Scalar objective over a point in a search space.
using ObjectiveFn = std::function<double(std::span<const double>)>;

/// Evaluates `f` at every point, in parallel with OpenMP when `workers` != 1.
/// Results are stored by index, so the output does not depend on the thread
/// count or scheduling. `workers` <= 0 uses the OpenMP default.
std::vector<double> evaluate_batch(const ObjectiveFn& f, std::span<const std::vector<double>> points,
                                   int workers = 0);

/// Plain loop over the same points; the reference for evaluate_batch.
std::vector<double> evaluate_batch_serial(const ObjectiveFn& f, std::span<const std::vector<double>> points);

/// Sizing objectives of many designs.
std::vector<double> evaluate_designs(const SimulationContext& ctx, std::span<const Design> designs,
                                     const Weights& weights, int workers = 0);
std::vector<double> evaluate_designs_serial(const SimulationContext& ctx, std::span<const Design> designs,
                                            const Weights& weights);

/// Process-wide default worker count (0 = OpenMP default). Set by the CLI.
void set_default_workers(int workers);
int default_workers();

}  // namespace hybridgrid
