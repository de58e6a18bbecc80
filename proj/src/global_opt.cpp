#include "hybridgrid/global_opt.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include "hybridgrid/error.hpp"
#include "hybridgrid/rng.hpp"

namespace hybridgrid {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Point = std::vector<double>;
using Clock = std::chrono::steady_clock;

/// Budgeted evaluation with a monotone incumbent. Batches are evaluated in
/// parallel; the incumbent is updated in index order.
class Tracker {
 public:
  Tracker(const ObjectiveFn& f, const SearchSpace& space, const SolverBudget& budget)
      : f_(f), space_(space), budget_(budget) {}

  std::size_t remaining() const { return budget_.max_evals - std::min(evals_, budget_.max_evals); }
  bool exhausted() const { return remaining() == 0; }
  std::size_t evaluations() const { return evals_; }
  const Point& best_point() const { return best_point_; }
  double best_value() const { return best_value_; }

  /// Evaluates the snapped form of the first min(n, remaining) points.
  std::vector<double> eval(const std::vector<Point>& raw) {
    const std::size_t k = std::min(raw.size(), remaining());
    std::vector<Point> snapped;
    snapped.reserve(k);
    for (std::size_t i = 0; i < k; ++i) snapped.push_back(space_.snap(raw[i]));
    std::vector<double> values = k > 1 ? evaluate_batch(f_, snapped, budget_.workers)
                                       : evaluate_batch_serial(f_, snapped);
    evals_ += k;
    for (std::size_t i = 0; i < k; ++i) {
      if (values[i] < best_value_) {
        best_value_ = values[i];
        best_point_ = snapped[i];
      }
    }
    return values;
  }

  double eval_one(const Point& raw) { return eval(std::vector<Point>{raw}).at(0); }

  SolverReport report(const std::string& name, Clock::time_point start) const {
    SolverReport r;
    r.solver = name;
    r.best_point = best_point_;
    r.best_value = best_value_;
    r.evaluations = evals_;
    r.runtime_s = std::chrono::duration<double>(Clock::now() - start).count();
    r.overall = r.runtime_s * r.best_value;
    return r;
  }

 private:
  const ObjectiveFn& f_;
  const SearchSpace& space_;
  SolverBudget budget_;
  std::size_t evals_ = 0;
  Point best_point_;
  double best_value_ = kInf;
};

/// Relative-improvement stall test over a sliding window of iterations.
class StallMonitor {
 public:
  StallMonitor(double tol, std::size_t window) : tol_(tol), window_(window) {}

  /// Records the incumbent after an iteration; true once stalled.
  bool update(double best) {
    history_.push_back(best);
    if (window_ == 0 || history_.size() <= window_) return false;
    const double old = history_[history_.size() - 1 - window_];
    if (!std::isfinite(old)) return false;
    return old - best <= tol_ * std::max(std::abs(old), 1e-300);
  }

 private:
  double tol_;
  std::size_t window_;
  std::vector<double> history_;
};

void check_budget(const SearchSpace& space, const SolverBudget& budget) {
  space.validate();
  if (budget.max_evals == 0) throw DomainError("max_evals must be >= 1");
}

Point random_point(const SearchSpace& space, Engine& eng) {
  Point x(space.dim());
  for (std::size_t d = 0; d < space.dim(); ++d) x[d] = uniform(eng, space.lower[d], space.upper[d]);
  return x;
}

Point center(const SearchSpace& space) {
  Point x(space.dim());
  for (std::size_t d = 0; d < space.dim(); ++d) x[d] = 0.5 * (space.lower[d] + space.upper[d]);
  return x;
}

bool all_integer(const SearchSpace& space) {
  return std::all_of(space.integer_mask.begin(), space.integer_mask.end(), [](bool b) { return b; });
}

struct LocalResult {
  Point point;
  double value = kInf;
  std::size_t evals = 0;
};

/// Compass search with a complete poll. Integer dimensions step by whole
/// units (at least 1). Runs serially when `parallel_poll` is false.
LocalResult compass_search(const ObjectiveFn& f, const SearchSpace& space, Point x, double fx, double mesh,
                           const PatternSearchParams& p, std::size_t max_evals, int workers, bool parallel_poll) {
  LocalResult r{x, fx, 0};
  const std::size_t n = space.dim();
  const bool integer_only = all_integer(space);
  while (r.evals < max_evals) {
    std::vector<Point> poll;
    bool unit_steps = true;
    for (std::size_t d = 0; d < n; ++d) {
      double step = mesh * space.range(d);
      if (space.integer_mask[d]) {
        step = std::max(1.0, std::round(step));
        if (step > 1.0) unit_steps = false;
      }
      if (step <= 0.0) continue;
      for (double sign : {1.0, -1.0}) {
        Point y = r.point;
        y[d] += sign * step;
        y = space.snap(y);
        if (y != r.point) poll.push_back(std::move(y));
      }
    }
    if (poll.size() > max_evals - r.evals) poll.resize(max_evals - r.evals);
    std::vector<double> values;
    if (parallel_poll && poll.size() > 1) {
      values = evaluate_batch(f, poll, workers);
    } else {
      values = evaluate_batch_serial(f, poll);
    }
    r.evals += poll.size();
    std::size_t best = poll.size();
    double best_value = r.value;
    for (std::size_t i = 0; i < poll.size(); ++i) {
      if (values[i] < best_value) {
        best_value = values[i];
        best = i;
      }
    }
    if (best < poll.size()) {
      r.point = poll[best];
      r.value = best_value;
      mesh = std::min(1.0, mesh * p.expansion);
    } else {
      if ((integer_only && unit_steps) || mesh < p.mesh_tolerance) break;
      mesh *= p.contraction;
    }
  }
  return r;
}

/// Nelder-Mead in unit-box coordinates followed by a compass polish.
LocalResult nelder_mead(const ObjectiveFn& f, const SearchSpace& space, const Point& start,
                        const MultistartParams& p, std::size_t max_evals) {
  const std::size_t n = space.dim();
  LocalResult r;
  auto to_x = [&](const Point& u) {
    Point x(n);
    for (std::size_t d = 0; d < n; ++d) x[d] = space.lower[d] + std::clamp(u[d], 0.0, 1.0) * space.range(d);
    return space.snap(x);
  };
  auto eval = [&](const Point& u) {
    const Point x = to_x(u);
    const double v = f(x);
    ++r.evals;
    if (v < r.value) {
      r.value = v;
      r.point = x;
    }
    return v;
  };
  // Reserve part of the budget for the polish.
  const std::size_t polish_budget = std::min(max_evals / 3, 40 * n + 20);
  const std::size_t nm_budget = max_evals - polish_budget;

  std::vector<Point> simplex(n + 1, Point(n));
  std::vector<double> fv(n + 1);
  for (std::size_t d = 0; d < n; ++d) {
    simplex[0][d] = space.range(d) > 0.0 ? (start[d] - space.lower[d]) / space.range(d) : 0.0;
  }
  for (std::size_t i = 1; i <= n; ++i) {
    simplex[i] = simplex[0];
    double& c = simplex[i][i - 1];
    c += c + p.simplex_fraction <= 1.0 ? p.simplex_fraction : -p.simplex_fraction;
  }
  for (std::size_t i = 0; i <= n && r.evals < nm_budget; ++i) fv[i] = eval(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  while (r.evals + 2 <= nm_budget) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];
    double diameter = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t d = 0; d < n; ++d) diameter = std::max(diameter, std::abs(simplex[i][d] - simplex[best][d]));
    }
    if (fv[worst] - fv[best] <= p.tolerance && diameter <= std::sqrt(p.tolerance)) break;
    if (diameter < 1e-12) break;

    Point centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex[i][d] / static_cast<double>(n);
    }
    auto along = [&](double t) {
      Point u(n);
      for (std::size_t d = 0; d < n; ++d) u[d] = std::clamp(centroid[d] + t * (simplex[worst][d] - centroid[d]), 0.0, 1.0);
      return u;
    };
    Point xr = along(-1.0);
    const double fr = eval(xr);
    if (fr < fv[best]) {
      Point xe = along(-2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        fv[worst] = fe;
      } else {
        simplex[worst] = xr;
        fv[worst] = fr;
      }
    } else if (fr < fv[second]) {
      simplex[worst] = xr;
      fv[worst] = fr;
    } else {
      const bool outside = fr < fv[worst];
      Point xc = along(outside ? -0.5 : 0.5);
      const double fc = eval(xc);
      if (fc < (outside ? fr : fv[worst])) {
        simplex[worst] = xc;
        fv[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= n && r.evals < nm_budget; ++i) {
          if (i == best) continue;
          for (std::size_t d = 0; d < n; ++d) simplex[i][d] = simplex[best][d] + 0.5 * (simplex[i][d] - simplex[best][d]);
          fv[i] = eval(simplex[i]);
        }
      }
    }
  }

  if (r.point.empty()) return r;
  PatternSearchParams polish;
  polish.mesh_tolerance = 1e-6;
  const std::size_t left = max_evals > r.evals ? max_evals - r.evals : 0;
  LocalResult pr = compass_search(f, space, r.point, r.value, 0.01, polish, left, 1, false);
  r.evals += pr.evals;
  if (pr.value < r.value) {
    r.value = pr.value;
    r.point = pr.point;
  }
  return r;
}

}  // namespace

void SearchSpace::validate() const {
  if (lower.empty()) throw DomainError("search space has no dimensions");
  if (upper.size() != lower.size() || integer_mask.size() != lower.size()) {
    throw DomainError("search space bounds and mask must have equal length");
  }
  for (std::size_t d = 0; d < lower.size(); ++d) {
    if (!std::isfinite(lower[d]) || !std::isfinite(upper[d]) || lower[d] > upper[d]) {
      throw DomainError("search space needs finite lower <= upper in dimension " + std::to_string(d));
    }
    if (integer_mask[d] && std::ceil(lower[d]) > std::floor(upper[d])) {
      throw DomainError("integer dimension " + std::to_string(d) + " contains no integer");
    }
  }
}

std::vector<double> SearchSpace::snap(std::span<const double> x) const {
  std::vector<double> y(x.begin(), x.end());
  for (std::size_t d = 0; d < y.size(); ++d) {
    double v = std::isfinite(y[d]) ? std::clamp(y[d], lower[d], upper[d]) : lower[d];
    if (integer_mask[d]) v = std::clamp(std::round(v), std::ceil(lower[d]), std::floor(upper[d]));
    y[d] = v;
  }
  return y;
}

double SearchSpace::violation(std::span<const double> x) const {
  double v = 0.0;
  for (std::size_t d = 0; d < x.size(); ++d) {
    const double r = std::max(range(d), 1e-12);
    if (x[d] < lower[d]) v += (lower[d] - x[d]) / r;
    if (x[d] > upper[d]) v += (x[d] - upper[d]) / r;
  }
  return v;
}

SolverReport pso_minimize(const ObjectiveFn& f, const SearchSpace& space, const PsoParams& p,
                          const SolverBudget& budget) {
  check_budget(space, budget);
  if (p.swarm_size == 0) throw DomainError("swarm size must be >= 1");
  const auto start = Clock::now();
  const std::size_t n = space.dim();
  Engine eng = make_engine(budget.seed, "solver");
  Tracker tr(f, space, budget);
  StallMonitor stall(budget.stall_tolerance, budget.stall_iterations);

  std::vector<Point> x(p.swarm_size), v(p.swarm_size, Point(n));
  Point vmax(n);
  for (std::size_t d = 0; d < n; ++d) vmax[d] = p.max_velocity_fraction * space.range(d);
  for (std::size_t i = 0; i < p.swarm_size; ++i) {
    x[i] = random_point(space, eng);
    for (std::size_t d = 0; d < n; ++d) v[i][d] = uniform(eng, -vmax[d], vmax[d]);
  }
  std::vector<Point> pbest = x;
  std::vector<double> pbest_value(p.swarm_size, kInf);
  Point gbest;
  double gbest_value = kInf;

  auto absorb = [&](const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] < pbest_value[i]) {
        pbest_value[i] = values[i];
        pbest[i] = x[i];
      }
      if (values[i] < gbest_value) {
        gbest_value = values[i];
        gbest = x[i];
      }
    }
  };
  absorb(tr.eval(x));

  while (!tr.exhausted()) {
    for (std::size_t i = 0; i < p.swarm_size; ++i) {
      for (std::size_t d = 0; d < n; ++d) {
        const double r1 = uniform01(eng);
        const double r2 = uniform01(eng);
        double vd = p.inertia * v[i][d] + p.c1 * r1 * (pbest[i][d] - x[i][d]) + p.c2 * r2 * (gbest[d] - x[i][d]);
        vd = std::clamp(vd, -vmax[d], vmax[d]);
        double xd = x[i][d] + vd;
        if (xd < space.lower[d] || xd > space.upper[d]) {
          xd = std::clamp(xd, space.lower[d], space.upper[d]);
          vd = 0.0;
        }
        v[i][d] = vd;
        x[i][d] = xd;
      }
    }
    absorb(tr.eval(x));
    if (stall.update(tr.best_value())) break;
  }
  return tr.report("pso", start);
}

SolverReport ga_minimize(const ObjectiveFn& f, const SearchSpace& space, const GaParams& p,
                         const SolverBudget& budget) {
  check_budget(space, budget);
  if (p.population == 0) throw DomainError("population must be >= 1");
  const auto start = Clock::now();
  const std::size_t n = space.dim();
  const std::size_t pop = p.population;
  Engine eng = make_engine(budget.seed, "solver");
  Tracker tr(f, space, budget);
  StallMonitor stall(budget.stall_tolerance, budget.stall_iterations);

  auto fitness_of = [&](const std::vector<Point>& genes, const std::vector<double>& raw) {
    std::vector<double> fit(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) fit[i] = raw[i] + p.penalty_weight * space.violation(genes[i]);
    return fit;
  };
  auto mutate = [&](Point& g, bool force) {
    bool changed = false;
    for (std::size_t d = 0; d < n; ++d) {
      if (uniform01(eng) < p.mutation_rate) {
        double step = p.mutation_sigma * space.range(d) * standard_normal(eng);
        if (space.integer_mask[d] && std::abs(step) < 0.5) step = step < 0.0 ? -1.0 : 1.0;
        g[d] += step;
        changed = true;
      }
    }
    if (force && !changed) {
      const std::size_t d = uniform_index(eng, n);
      double step = p.mutation_sigma * space.range(d) * standard_normal(eng);
      if (space.integer_mask[d] && std::abs(step) < 0.5) step = step < 0.0 ? -1.0 : 1.0;
      g[d] += step;
    }
  };

  std::vector<Point> genes(pop);
  for (auto& g : genes) g = random_point(space, eng);
  std::vector<double> raw = tr.eval(genes);
  genes.resize(raw.size());
  std::vector<double> fit = fitness_of(genes, raw);

  auto tournament = [&]() {
    std::size_t best = uniform_index(eng, genes.size());
    for (std::size_t k = 1; k < p.tournament_size; ++k) {
      const std::size_t c = uniform_index(eng, genes.size());
      if (fit[c] < fit[best]) best = c;
    }
    return best;
  };

  while (!tr.exhausted() && !genes.empty()) {
    std::vector<std::size_t> order(genes.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fit[a] < fit[b]; });

    std::vector<Point> children;
    if (pop == 1) {
      // Mutation-only hill climb.
      Point child = genes[0];
      mutate(child, true);
      children.push_back(std::move(child));
    } else {
      while (children.size() + std::min(p.elite_count, pop) < pop) {
        Point a = genes[tournament()];
        Point b = genes[tournament()];
        if (uniform01(eng) < p.crossover_rate) {
          for (std::size_t d = 0; d < n; ++d) {
            const double lo = std::min(a[d], b[d]);
            const double hi = std::max(a[d], b[d]);
            const double span = hi - lo;
            const double ca = uniform(eng, lo - p.blend_alpha * span, hi + p.blend_alpha * span);
            const double cb = uniform(eng, lo - p.blend_alpha * span, hi + p.blend_alpha * span);
            a[d] = ca;
            b[d] = cb;
          }
        }
        mutate(a, false);
        mutate(b, false);
        children.push_back(std::move(a));
        if (children.size() + std::min(p.elite_count, pop) < pop) children.push_back(std::move(b));
      }
    }
    std::vector<double> child_raw = tr.eval(children);
    children.resize(child_raw.size());
    std::vector<double> child_fit = fitness_of(children, child_raw);

    std::vector<Point> next;
    std::vector<double> next_fit;
    if (pop == 1) {
      if (!child_fit.empty() && child_fit[0] <= fit[0]) {
        next.push_back(children[0]);
        next_fit.push_back(child_fit[0]);
      } else {
        next.push_back(genes[0]);
        next_fit.push_back(fit[0]);
      }
    } else {
      for (std::size_t k = 0; k < std::min(p.elite_count, order.size()); ++k) {
        next.push_back(genes[order[k]]);
        next_fit.push_back(fit[order[k]]);
      }
      for (std::size_t i = 0; i < children.size(); ++i) {
        next.push_back(std::move(children[i]));
        next_fit.push_back(child_fit[i]);
      }
    }
    genes = std::move(next);
    fit = std::move(next_fit);
    if (stall.update(tr.best_value())) break;
  }
  return tr.report("ga", start);
}

double sa_acceptance_probability(double delta_e, double temperature) {
  if (delta_e <= 0.0) return 1.0;
  if (!(temperature > 0.0)) return 0.0;
  return std::exp(-delta_e / temperature);
}

SolverReport sa_minimize(const ObjectiveFn& f, const SearchSpace& space, const SaParams& p,
                         const SolverBudget& budget) {
  check_budget(space, budget);
  if (!(p.initial_temperature > 0.0)) throw DomainError("initial temperature must be > 0");
  if (!(p.cooling > 0.0 && p.cooling < 1.0)) throw DomainError("cooling factor must lie in (0, 1)");
  const auto start = Clock::now();
  const std::size_t n = space.dim();
  Engine eng = make_engine(budget.seed, "solver");
  Tracker tr(f, space, budget);
  StallMonitor stall(budget.stall_tolerance, budget.stall_iterations);

  Point x = space.snap(random_point(space, eng));
  double fx = tr.eval_one(x);
  double temperature = p.initial_temperature;
  std::size_t level = 0;
  const std::size_t steps = std::max<std::size_t>(1, p.steps_per_temperature);

  while (!tr.exhausted()) {
    const double scale = std::max(std::sqrt(temperature / p.initial_temperature), 0.02);
    for (std::size_t s = 0; s < steps && !tr.exhausted(); ++s) {
      Point y = x;
      const std::size_t d = uniform_index(eng, n);
      double step = p.step_fraction * space.range(d) * scale * standard_normal(eng);
      if (space.integer_mask[d]) {
        step = std::round(step);
        if (step == 0.0) step = uniform01(eng) < 0.5 ? -1.0 : 1.0;
      }
      y[d] += step;
      y = space.snap(y);
      const double fy = tr.eval_one(y);
      const double u = uniform01(eng);
      if (u < sa_acceptance_probability(fy - fx, temperature)) {
        x = std::move(y);
        fx = fy;
      }
    }
    ++level;
    temperature = p.logarithmic_cooling ? p.initial_temperature / std::log(std::numbers::e + static_cast<double>(level))
                                        : temperature * p.cooling;
    if (stall.update(tr.best_value())) break;
  }
  return tr.report("sa", start);
}

SolverReport pattern_search_minimize(const ObjectiveFn& f, const SearchSpace& space, const PatternSearchParams& p,
                                     const SolverBudget& budget) {
  check_budget(space, budget);
  if (!(p.mesh_tolerance > 0.0)) throw DomainError("mesh tolerance must be > 0");
  if (!(p.initial_mesh > 0.0) || !(p.expansion >= 1.0) || !(p.contraction > 0.0 && p.contraction < 1.0)) {
    throw DomainError("invalid pattern search mesh parameters");
  }
  const auto start = Clock::now();
  Point x0 = p.start ? *p.start : center(space);
  if (x0.size() != space.dim()) throw DomainError("pattern search start has wrong dimension");
  x0 = space.snap(x0);
  const double f0 = f(x0);
  LocalResult r = compass_search(f, space, x0, f0, p.initial_mesh, p, budget.max_evals - 1, budget.workers, true);
  SolverReport rep;
  rep.solver = "ps";
  rep.best_point = r.point;
  rep.best_value = r.value;
  rep.evaluations = r.evals + 1;
  rep.runtime_s = std::chrono::duration<double>(Clock::now() - start).count();
  rep.overall = rep.runtime_s * rep.best_value;
  return rep;
}

SolverReport multistart_minimize(const ObjectiveFn& f, const SearchSpace& space, const MultistartParams& p,
                                 const SolverBudget& budget) {
  check_budget(space, budget);
  if (p.n_starts == 0) throw DomainError("n_starts must be >= 1");
  const auto start = Clock::now();
  Engine eng = make_engine(budget.seed, "solver");
  std::vector<Point> starts(p.n_starts);
  for (auto& s : starts) s = space.snap(random_point(space, eng));
  const std::size_t per_start = std::max<std::size_t>(budget.max_evals / p.n_starts, 1);
  const std::size_t used_starts = std::min(p.n_starts, budget.max_evals);

  // Starts are independent; each runs serially on its own budget.
  std::vector<LocalResult> results(used_starts);
  std::vector<Point> index_points(used_starts, Point{0.0});
  for (std::size_t i = 0; i < used_starts; ++i) index_points[i][0] = static_cast<double>(i);
  ObjectiveFn run_one = [&](std::span<const double> idx) {
    const auto i = static_cast<std::size_t>(idx[0]);
    results[i] = nelder_mead(f, space, starts[i], p, per_start);
    return results[i].value;
  };
  evaluate_batch(run_one, index_points, budget.workers);

  SolverReport rep;
  rep.solver = "ms";
  rep.best_value = kInf;
  for (const auto& r : results) {
    rep.evaluations += r.evals;
    if (r.value < rep.best_value) {
      rep.best_value = r.value;
      rep.best_point = r.point;
    }
  }
  rep.runtime_s = std::chrono::duration<double>(Clock::now() - start).count();
  rep.overall = rep.runtime_s * rep.best_value;
  return rep;
}

SolverReport run_solver(const std::string& name, const ObjectiveFn& f, const SearchSpace& space,
                        const SolverBudget& budget) {
  if (name == "pso") return pso_minimize(f, space, PsoParams{}, budget);
  if (name == "ga") return ga_minimize(f, space, GaParams{}, budget);
  if (name == "sa") return sa_minimize(f, space, SaParams{}, budget);
  if (name == "ps") return pattern_search_minimize(f, space, PatternSearchParams{}, budget);
  if (name == "ms" || name == "gs") {
    MultistartParams mp;
    mp.n_starts = name == "ms" ? 89 : 10;
    SolverReport r = multistart_minimize(f, space, mp, budget);
    r.solver = name;
    return r;
  }
  throw DomainError("unknown solver '" + name + "' (expected pso, ga, sa, ps, ms or gs)");
}

std::vector<SolverReport> solver_benchmark(const ObjectiveFn& f, const SearchSpace& space,
                                           std::span<const std::string> solvers, const SolverBudget& budget) {
  if (solvers.empty()) throw DomainError("benchmark needs at least one solver");
  std::vector<SolverReport> rows;
  for (const auto& s : solvers) rows.push_back(run_solver(s, f, space, budget));
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SolverReport& a, const SolverReport& b) { return a.overall < b.overall; });
  return rows;
}

void write_benchmark_csv(const std::filesystem::path& path, std::span<const SolverReport> rows) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out.precision(10);
  out << "solver,runtime_s,min_obj,overall,best_point\n";
  for (const auto& r : rows) {
    out << r.solver << ',' << r.runtime_s << ',' << r.best_value << ',' << r.overall << ",\"";
    for (std::size_t d = 0; d < r.best_point.size(); ++d) out << (d ? ";" : "") << r.best_point[d];
    out << "\"\n";
  }
}

// Multiobjective ------------------------------------------------------------

bool dominates(std::span<const double> a, std::span<const double> b) {
  bool better = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] > b[k]) return false;
    if (a[k] < b[k]) better = true;
  }
  return better;
}

std::vector<ParetoPoint> nondominated(std::span<const ParetoPoint> points) {
  std::vector<ParetoPoint> front;
  for (const auto& p : points) {
    bool skip = false;
    for (const auto& q : front) {
      if (dominates(q.objectives, p.objectives) || q.objectives == p.objectives) {
        skip = true;
        break;
      }
    }
    if (skip) continue;
    std::erase_if(front, [&](const ParetoPoint& q) { return dominates(p.objectives, q.objectives); });
    front.push_back(p);
  }
  return front;
}

namespace {

/// Fast non-dominated sort; returns front index per member.
std::vector<std::size_t> front_ranks(const std::vector<std::vector<double>>& objs) {
  const std::size_t n = objs.size();
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<std::size_t> count(n, 0), rank(n, 0);
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (dominates(objs[i], objs[j])) {
        dominated[i].push_back(j);
      } else if (dominates(objs[j], objs[i])) {
        ++count[i];
      }
    }
    if (count[i] == 0) current.push_back(i);
  }
  std::size_t level = 0;
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t i : current) {
      rank[i] = level;
      for (std::size_t j : dominated[i]) {
        if (--count[j] == 0) next.push_back(j);
      }
    }
    std::sort(next.begin(), next.end());
    current = std::move(next);
    ++level;
  }
  return rank;
}

std::vector<double> crowding(const std::vector<std::vector<double>>& objs, const std::vector<std::size_t>& members) {
  std::vector<double> dist(members.size(), 0.0);
  if (members.empty()) return dist;
  const std::size_t m = objs[members[0]].size();
  std::vector<std::size_t> order(members.size());
  for (std::size_t k = 0; k < m; ++k) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return objs[members[a]][k] < objs[members[b]][k]; });
    const double lo = objs[members[order.front()]][k];
    const double hi = objs[members[order.back()]][k];
    dist[order.front()] = kInf;
    dist[order.back()] = kInf;
    if (hi - lo <= 0.0) continue;
    for (std::size_t i = 1; i + 1 < order.size(); ++i) {
      dist[order[i]] += (objs[members[order[i + 1]]][k] - objs[members[order[i - 1]]][k]) / (hi - lo);
    }
  }
  return dist;
}

}  // namespace

std::vector<ParetoPoint> pareto_front(const VectorObjectiveFn& f, const SearchSpace& space, const ParetoParams& p) {
  space.validate();
  if (p.population < 2) throw DomainError("Pareto population must be >= 2");
  const std::size_t n = space.dim();
  const std::size_t pop = p.population + (p.population % 2);
  Engine eng = make_engine(p.seed, "solver");

  std::vector<ParetoPoint> archive;
  auto evaluate = [&](const std::vector<Point>& xs) {
    std::vector<Point> snapped;
    snapped.reserve(xs.size());
    for (const auto& x : xs) snapped.push_back(space.snap(x));
    std::vector<std::vector<double>> objs(snapped.size());
    std::vector<Point> idx(snapped.size(), Point{0.0});
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i][0] = static_cast<double>(i);
    ObjectiveFn one = [&](std::span<const double> k) {
      const auto i = static_cast<std::size_t>(k[0]);
      objs[i] = f(snapped[i]);
      return 0.0;
    };
    evaluate_batch(one, idx, p.workers);
    for (std::size_t i = 0; i < objs.size(); ++i) {
      if (objs[i].size() < 2) throw DomainError("Pareto search needs at least two objectives");
      archive.push_back({snapped[i], objs[i]});
    }
    // Keep the archive bounded by filtering it as it grows.
    if (archive.size() > 4096) archive = nondominated(archive);
    return objs;
  };

  std::vector<Point> xs(pop);
  for (auto& x : xs) x = random_point(space, eng);
  std::vector<std::vector<double>> objs = evaluate(xs);
  std::vector<std::size_t> rank = front_ranks(objs);
  std::vector<double> crowd(pop, 0.0);
  {
    std::vector<std::size_t> all(pop);
    std::iota(all.begin(), all.end(), 0);
    for (std::size_t r = 0; r <= *std::max_element(rank.begin(), rank.end()); ++r) {
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < pop; ++i) {
        if (rank[i] == r) members.push_back(i);
      }
      const auto c = crowding(objs, members);
      for (std::size_t k = 0; k < members.size(); ++k) crowd[members[k]] = c[k];
    }
  }

  auto better = [&](std::size_t a, std::size_t b) {
    if (rank[a] != rank[b]) return rank[a] < rank[b];
    return crowd[a] > crowd[b];
  };

  for (std::size_t gen = 0; gen < p.generations; ++gen) {
    std::vector<Point> children;
    children.reserve(pop);
    while (children.size() < pop) {
      auto pick = [&]() {
        const std::size_t a = uniform_index(eng, pop);
        const std::size_t b = uniform_index(eng, pop);
        return better(b, a) ? b : a;
      };
      Point c1 = xs[pick()];
      Point c2 = xs[pick()];
      if (uniform01(eng) < p.crossover_rate) {
        for (std::size_t d = 0; d < n; ++d) {
          if (uniform01(eng) >= 0.5) continue;
          const double u = uniform01(eng);
          const double beta = u <= 0.5 ? std::pow(2.0 * u, 1.0 / (p.sbx_eta + 1.0))
                                       : std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (p.sbx_eta + 1.0));
          const double a = c1[d];
          const double b = c2[d];
          c1[d] = 0.5 * ((1.0 + beta) * a + (1.0 - beta) * b);
          c2[d] = 0.5 * ((1.0 - beta) * a + (1.0 + beta) * b);
        }
      }
      for (Point* c : {&c1, &c2}) {
        for (std::size_t d = 0; d < n; ++d) {
          if (uniform01(eng) >= 1.0 / static_cast<double>(n)) continue;
          const double u = uniform01(eng);
          const double delta = u < 0.5 ? std::pow(2.0 * u, 1.0 / (p.mutation_eta + 1.0)) - 1.0
                                       : 1.0 - std::pow(2.0 * (1.0 - u), 1.0 / (p.mutation_eta + 1.0));
          double step = delta * space.range(d);
          if (space.integer_mask[d] && std::abs(step) < 0.5 && space.range(d) >= 1.0) step = delta < 0.0 ? -1.0 : 1.0;
          (*c)[d] += step;
        }
        *c = space.snap(*c);
      }
      children.push_back(std::move(c1));
      if (children.size() < pop) children.push_back(std::move(c2));
    }
    std::vector<std::vector<double>> child_objs = evaluate(children);

    std::vector<Point> union_x = xs;
    std::vector<std::vector<double>> union_objs = objs;
    union_x.insert(union_x.end(), children.begin(), children.end());
    union_objs.insert(union_objs.end(), child_objs.begin(), child_objs.end());
    const std::vector<std::size_t> union_rank = front_ranks(union_objs);

    std::vector<std::size_t> chosen;
    std::vector<double> chosen_crowd;
    for (std::size_t r = 0; chosen.size() < pop; ++r) {
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < union_x.size(); ++i) {
        if (union_rank[i] == r) members.push_back(i);
      }
      if (members.empty()) break;
      const auto c = crowding(union_objs, members);
      if (chosen.size() + members.size() <= pop) {
        chosen.insert(chosen.end(), members.begin(), members.end());
        chosen_crowd.insert(chosen_crowd.end(), c.begin(), c.end());
      } else {
        std::vector<std::size_t> order(members.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return c[a] > c[b]; });
        for (std::size_t k = 0; chosen.size() < pop; ++k) {
          chosen.push_back(members[order[k]]);
          chosen_crowd.push_back(c[order[k]]);
        }
      }
    }
    std::vector<Point> next_x;
    std::vector<std::vector<double>> next_objs;
    std::vector<std::size_t> next_rank;
    for (std::size_t i : chosen) {
      next_x.push_back(union_x[i]);
      next_objs.push_back(union_objs[i]);
      next_rank.push_back(union_rank[i]);
    }
    xs = std::move(next_x);
    objs = std::move(next_objs);
    rank = std::move(next_rank);
    crowd = std::move(chosen_crowd);
  }
  return nondominated(archive);
}

}  // namespace hybridgrid
