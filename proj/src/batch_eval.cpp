#include "hybridgrid/batch_eval.hpp"

#include <atomic>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hybridgrid {

namespace {

std::atomic<int> g_default_workers{0};

/// Runs body(i) for i in [0, n), rethrowing the first exception (lowest
/// index) after the parallel region.
template <class Body>
void parallel_for(std::size_t n, int workers, Body body) {
  if (workers <= 0) workers = default_workers();
  std::exception_ptr error;
  std::size_t error_index = n;
  std::mutex m;
  const long long count = static_cast<long long>(n);
#ifdef _OPENMP
  const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (threads > 1 && n > 1)
#endif
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(m);
      if (static_cast<std::size_t>(i) < error_index) {
        error_index = static_cast<std::size_t>(i);
        error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

void set_default_workers(int workers) { g_default_workers = workers < 0 ? 0 : workers; }
int default_workers() { return g_default_workers; }

std::vector<double> evaluate_batch(const ObjectiveFn& f, std::span<const std::vector<double>> points, int workers) {
  std::vector<double> out(points.size());
  parallel_for(points.size(), workers, [&](std::size_t i) { out[i] = f(points[i]); });
  return out;
}

std::vector<double> evaluate_batch_serial(const ObjectiveFn& f, std::span<const std::vector<double>> points) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(f(p));
  return out;
}

std::vector<double> evaluate_designs(const SimulationContext& ctx, std::span<const Design> designs,
                                     const Weights& weights, int workers) {
  std::vector<double> out(designs.size());
  parallel_for(designs.size(), workers, [&](std::size_t i) { out[i] = sizing_objective(designs[i], ctx, weights); });
  return out;
}

std::vector<double> evaluate_designs_serial(const SimulationContext& ctx, std::span<const Design> designs,
                                            const Weights& weights) {
  std::vector<double> out;
  out.reserve(designs.size());
  for (const auto& d : designs) out.push_back(sizing_objective(d, ctx, weights));
  return out;
}

}  // namespace hybridgrid
