// Command-line front end. Every subcommand writes result.json (plus its CSVs)
// into --out and exits nonzero when the result document reports an error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hybridgrid/config.hpp"
#include "hybridgrid/error.hpp"
#include "hybridgrid/workflows.hpp"

namespace hg = hybridgrid;
using nlohmann::json;

namespace {

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = "out";
  std::optional<int> workers;
  std::optional<std::string> solver;
  std::vector<double> weights;
  std::vector<std::string> solvers;
  std::vector<double> design;
  std::optional<std::string> parameter;
};

hg::RunConfig build_config(const Flags& f, const std::string& command) {
  hg::RunConfig cfg = f.config.empty() ? hg::RunConfig{} : hg::load_config(f.config);
  if (f.seed) cfg.seed = f.seed;
  if (f.workers) cfg.workers = *f.workers;
  if (f.solver) cfg.solver.name = *f.solver;
  if (!f.weights.empty()) {
    if (command == "dispatch") cfg.dispatch.weights = hg::Weights{f.weights};
    else cfg.weights = hg::Weights{f.weights};
  }
  if (!f.design.empty()) cfg.design = f.design;
  if (f.parameter) cfg.sweep.parameter = *f.parameter;
  cfg.validate();
  if (!cfg.seed) throw hg::InputError("a seed is required (--seed or \"seed\" in the config)");
  return cfg;
}

int write_document(const json& doc, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  std::ofstream os(out_dir / "result.json");
  os << doc.dump(2) << '\n';
  if (doc.value("status", "") != "ok") {
    std::cerr << "error (" << doc["error"].value("kind", "error") << "): " << doc["error"].value("message", "")
              << '\n';
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid islanded microgrid sizing, dispatch and analysis"};
  app.require_subcommand(1);
  Flags f;

  const auto common = [&f](CLI::App* sub) {
    sub->add_option("--config", f.config, "JSON run configuration")->check(CLI::ExistingFile);
    sub->add_option("--seed", f.seed, "Top-level seed (overrides the config)");
    sub->add_option("--out", f.out, "Output directory")->capture_default_str();
    sub->add_option("--workers", f.workers, "Worker threads (0 = all cores)");
  };

  auto* simulate = app.add_subcommand("simulate", "Simulate one year for a fixed design");
  auto* size = app.add_subcommand("size", "Size the system with a global solver");
  auto* dispatch = app.add_subcommand("dispatch", "Optimize one day's dispatch and run the robustness scenarios");
  auto* pareto = app.add_subcommand("pareto", "Multi-objective sizing front");
  auto* sweep = app.add_subcommand("sweep", "One-at-a-time sensitivity sweep");
  auto* breakeven = app.add_subcommand("breakeven", "Grid-extension break-even distance");
  auto* bench = app.add_subcommand("bench", "Compare the sizing solvers");
  for (auto* sub : {simulate, size, dispatch, pareto, sweep, breakeven, bench}) common(sub);

  for (auto* sub : {size, dispatch, sweep, breakeven, bench}) {
    sub->add_option("--solver", f.solver, "pso, ga, sa, ps, ms or gs");
  }
  for (auto* sub : {size, dispatch, sweep, breakeven}) {
    sub->add_option("--weights", f.weights, "Objective weights, comma separated")->delimiter(',');
  }
  for (auto* sub : {simulate, dispatch}) {
    sub->add_option("--design", f.design, "Three values: PV, WT, battery kWh")->delimiter(',')->expected(3);
  }
  sweep->add_option("--parameter", f.parameter,
                    "dg_rated, fuel_price, nominal_rate, inflation, bs_price, w1..w5");
  bench->add_option("--solvers", f.solvers, "Solvers to compare, comma separated")->delimiter(',');

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  hg::RunOptions opts;
  opts.out_dir = f.out;
  if (!f.solvers.empty()) opts.solvers = f.solvers;

  json doc;
  try {
    const hg::RunConfig cfg = build_config(f, command);
    doc = hg::run_command(command, cfg, opts);
  } catch (const hg::Error& e) {
    doc = {{"schema_version", hg::kSchemaVersion},
           {"command", command},
           {"status", "error"},
           {"error", {{"kind", e.kind()}, {"message", e.what()}}}};
  }
  return write_document(doc, opts.out_dir);
}
