// Times the serial reference against the OpenMP batch evaluator on random
// designs over the bundled year and checks that both return the same values.

#include <chrono>
#include <cstdio>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "hybridgrid/batch_eval.hpp"
#include "hybridgrid/rng.hpp"
#include "hybridgrid/workflows.hpp"

namespace hg = hybridgrid;

int main(int argc, char** argv) {
  CLI::App app{"Serial vs OpenMP design evaluation"};
  std::size_t n = 400;
  int repeats = 3;
  std::uint64_t seed = 1;
  app.add_option("-n,--designs", n, "Designs per batch")->capture_default_str();
  app.add_option("--repeats", repeats, "Timed repetitions")->capture_default_str();
  app.add_option("--seed", seed, "Seed for the random designs")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  const hg::RunConfig cfg;
  const hg::Inputs in = hg::load_inputs(cfg.data, seed);
  const hg::SimulationContext ctx(in.climate, in.load, cfg.system());
  const hg::Weights w = hg::Weights::equal(5);

  hg::Engine eng = hg::make_engine(seed, "scenario");
  std::vector<hg::Design> designs;
  designs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    designs.push_back(hg::Design::counts(static_cast<double>(hg::uniform_index(eng, 101)),
                                         static_cast<double>(hg::uniform_index(eng, 31)),
                                         hg::uniform(eng, 0.0, 200.0)));
  }

  const auto time_it = [&](auto&& fn) {
    double best = 1e300;
    std::vector<double> out;
    for (int r = 0; r < repeats; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      out = fn();
      best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return std::pair{best, out};
  };

  const auto [t_serial, serial] = time_it([&] { return hg::evaluate_designs_serial(ctx, designs, w); });
  const auto [t_omp, parallel] = time_it([&] { return hg::evaluate_designs(ctx, designs, w, 0); });

  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < n; ++i) mismatches += serial[i] != parallel[i];

  std::printf("designs %zu, threads %d\n", n, omp_get_max_threads());
  std::printf("serial  %.4f s  (%.3f ms/design)\n", t_serial, 1e3 * t_serial / static_cast<double>(n));
  std::printf("openmp  %.4f s  (%.3f ms/design)\n", t_omp, 1e3 * t_omp / static_cast<double>(n));
  std::printf("speedup %.2fx, mismatches %zu\n", t_serial / t_omp, mismatches);
  return mismatches == 0 ? 0 : 1;
}
