#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hybridgrid/batch_eval.hpp"

namespace hybridgrid {

/// Box-bounded search space; masked dimensions take integer values.
struct SearchSpace {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<bool> integer_mask;

  std::size_t dim() const { return lower.size(); }
  void validate() const;
  /// Clips to bounds, then rounds integer dimensions (staying inside bounds).
  std::vector<double> snap(std::span<const double> x) const;
  /// Sum of per-dimension bound violations, each relative to the range.
  double violation(std::span<const double> x) const;
  double range(std::size_t d) const { return upper[d] - lower[d]; }
};

struct SolverReport {
  std::string solver;
  std::vector<double> best_point;
  double best_value = 0.0;
  double runtime_s = 0.0;
  std::size_t evaluations = 0;
  double overall = 0.0;  // runtime_s * best_value
};

/// Options shared by every solver.
struct SolverBudget {
  std::size_t max_evals = 10000;
  std::uint64_t seed = 0;
  int workers = 0;  // 0 = default worker count
  double stall_tolerance = 1e-6;
  std::size_t stall_iterations = 50;
};

struct PsoParams {
  std::size_t swarm_size = 30;
  double inertia = 0.729;
  double c1 = 1.49445;
  double c2 = 1.49445;
  double max_velocity_fraction = 0.2;  // of each range
};

struct GaParams {
  std::size_t population = 50;
  double crossover_rate = 0.8;
  double mutation_rate = 0.1;      // per gene
  double mutation_sigma = 0.1;     // of each range
  double blend_alpha = 0.5;
  double penalty_weight = 1000.0;  // per unit relative bound violation
  std::size_t tournament_size = 2;
  std::size_t elite_count = 2;
};

struct SaParams {
  double initial_temperature = 1.0;
  double cooling = 0.95;
  std::size_t steps_per_temperature = 20;
  double step_fraction = 0.2;  // neighbor step relative to range at T0
  bool logarithmic_cooling = false;
};

struct PatternSearchParams {
  double initial_mesh = 0.25;     // fraction of each range
  double mesh_tolerance = 1e-6;
  double expansion = 2.0;
  double contraction = 0.5;
  std::optional<std::vector<double>> start;  // default: center of the box
};

struct MultistartParams {
  std::size_t n_starts = 20;
  double simplex_fraction = 0.1;  // initial simplex edge relative to range
  double tolerance = 1e-8;
};

SolverReport pso_minimize(const ObjectiveFn& f, const SearchSpace& space, const PsoParams& params,
                          const SolverBudget& budget);
SolverReport ga_minimize(const ObjectiveFn& f, const SearchSpace& space, const GaParams& params,
                         const SolverBudget& budget);
SolverReport sa_minimize(const ObjectiveFn& f, const SearchSpace& space, const SaParams& params,
                         const SolverBudget& budget);
SolverReport pattern_search_minimize(const ObjectiveFn& f, const SearchSpace& space,
                                     const PatternSearchParams& params, const SolverBudget& budget);
SolverReport multistart_minimize(const ObjectiveFn& f, const SearchSpace& space, const MultistartParams& params,
                                 const SolverBudget& budget);

/// Metropolis acceptance probability exp(-dE / T); 1 for dE <= 0.
double sa_acceptance_probability(double delta_e, double temperature);

/// Solver names: pso, ga, sa, ps (pattern search), ms (multistart, 89
/// starts), gs (multistart, 10 starts with a larger local budget each).
SolverReport run_solver(const std::string& name, const ObjectiveFn& f, const SearchSpace& space,
                        const SolverBudget& budget);

/// Runs each named solver with the same budget and seed. Rows are sorted by
/// `overall`, ties by list position.
std::vector<SolverReport> solver_benchmark(const ObjectiveFn& f, const SearchSpace& space,
                                           std::span<const std::string> solvers, const SolverBudget& budget);

void write_benchmark_csv(const std::filesystem::path& path, std::span<const SolverReport> rows);

// Multiobjective ------------------------------------------------------------

using VectorObjectiveFn = std::function<std::vector<double>(std::span<const double>)>;

struct ParetoPoint {
  std::vector<double> point;
  std::vector<double> objectives;
};

struct ParetoParams {
  std::size_t population = 60;
  std::size_t generations = 50;
  double crossover_rate = 0.9;
  double sbx_eta = 15.0;
  double mutation_eta = 20.0;
  std::uint64_t seed = 0;
  int workers = 0;
};

/// True when `a` is no worse than `b` everywhere and better somewhere.
bool dominates(std::span<const double> a, std::span<const double> b);

/// Members of `points` not dominated by any other; duplicates of the same
/// objective vector are kept once.
std::vector<ParetoPoint> nondominated(std::span<const ParetoPoint> points);

/// NSGA-II search. Returns the non-dominated subset of every point
/// evaluated during the run.
std::vector<ParetoPoint> pareto_front(const VectorObjectiveFn& f, const SearchSpace& space,
                                      const ParetoParams& params);

}  // namespace hybridgrid
