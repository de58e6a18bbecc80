#include "doctest.h"
#include "hybridgrid/config.hpp"
#include "hybridgrid/error.hpp"
#include "hybridgrid/workflows.hpp"
#include "support.hpp"

using namespace hybridgrid;
using nlohmann::json;

TEST_CASE("empty config gives the defaults") {
  const RunConfig cfg = config_from_json(json::object());
  CHECK(config_to_json(cfg) == config_to_json(RunConfig{}));
  const SystemSpec s = cfg.system();
  CHECK(s.generator.rated_power == 16.0);
  CHECK(s.generator.fuel_price == 3.20);
  CHECK(s.finance.nominal_rate == 0.09);
  CHECK(s.finance.inflation == 0.057);
  CHECK(s.battery.costs.capital_per_kwh == 300.0);
  CHECK(s.battery.chemistry == Chemistry::LithiumIon);
  CHECK(cfg.weights.w == std::vector<double>(5, 0.2));
  CHECK_FALSE(cfg.seed.has_value());
}

TEST_CASE("round trip") {
  json doc = {{"seed", 12},
              {"battery", {{"chemistry", "lead_acid"}}},
              {"generator", {{"kind", "microturbine"}, {"microturbine", {{"rated_power_kw", 12.0}}}}},
              {"sizing", {{"design", {10, 2, 40}}, {"weights", {0.3, 0.1, 0.2, 0.2, 0.2}}}},
              {"dispatch", {{"day", 40}}}};
  const RunConfig a = config_from_json(doc);
  const json once = config_to_json(a);
  const RunConfig b = config_from_json(once);
  CHECK(config_to_json(b) == once);
  CHECK(b.system().generator.kind == GeneratorKind::Microturbine);
  CHECK(b.system().generator.rated_power == 12.0);
  CHECK(b.system().battery.chemistry == Chemistry::LeadAcid);
  CHECK(*b.dispatch.day == 40);
  CHECK(*b.seed == 12);
}

TEST_CASE("unknown keys are named") {
  try {
    config_from_json(json{{"generator", {{"diesel", {{"fuel_price", 3.0}}}}}});
    FAIL("expected a schema error");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("generator.diesel.fuel_price") != std::string::npos);
  }
  CHECK_THROWS_AS(config_from_json(json{{"colour", 1}}), SchemaError);
}

TEST_CASE("invalid values name the field") {
  try {
    config_from_json(json{{"sizing", {{"weights", {0.5, 0.5, 0.5, 0, 0}}}}});
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("weights") != std::string::npos);
  }
  CHECK_THROWS_AS(config_from_json(json{{"wind", {{"cut_in_m_per_s", 30.0}}}}), DomainError);
  CHECK_THROWS_AS(config_from_json(json{{"pv", {{"eta_ref_fraction", "high"}}}}), Error);
  CHECK_THROWS_AS(config_from_json(json{{"battery", {{"chemistry", "nickel"}}}}), Error);
}

TEST_CASE("config files") {
  const auto dir = testing::scratch_dir("config");
  testing::write_text(dir / "bad.json", "{ \"seed\": 1, ");
  CHECK_THROWS_AS(load_config(dir / "bad.json"), ParseError);
  CHECK_THROWS_AS(load_config(dir / "absent.json"), InputError);

  std::filesystem::copy_file(bundled_data_dir() / "daily_load.csv", dir / "daily.csv");
  testing::write_text(dir / "ok.json", R"({"data": {"daily_load_csv": "daily.csv"}})");
  const RunConfig cfg = load_config(dir / "ok.json");
  CHECK(std::filesystem::path(cfg.data.daily_load_csv) == dir / "daily.csv");

  testing::write_text(dir / "missing.json", R"({"data": {"climate_csv": "nowhere.csv"}})");
  CHECK_THROWS_AS(load_config(dir / "missing.json"), InputError);
}

TEST_CASE("generated annual load from the daily profile") {
  DataConfig d;
  d.daily_load_csv = (bundled_data_dir() / "daily_load.csv").string();
  const Inputs a = load_inputs(d, 2018);
  const Inputs b = load_inputs(d, 2018);
  CHECK(a.load.size() == 8760);
  CHECK(a.load.demand_kw == b.load.demand_kw);
  // same sub-stream as the bundled file
  CHECK(a.load.demand_kw == testing::bundled().load.demand_kw);
}

TEST_CASE("raw station data reproduces the processed climate") {
  DataConfig d;
  d.climate_csv = (bundled_data_dir() / "timbila_2018_raw.csv").string();
  for (int s = 1; s <= 4; ++s) {
    d.neighbor_csvs.push_back((bundled_data_dir() / ("neighbor_" + std::to_string(s) + "_2018.csv")).string());
  }
  d.wind_correction_factor = 3.70;
  const Inputs in = load_inputs(d, 1);
  const auto& ref = testing::bundled().climate;
  REQUIRE(in.climate.size() == ref.size());
  for (std::size_t h = 0; h < ref.size(); h += 7) {
    CHECK(*in.climate.wind_speed[h] == doctest::Approx(*ref.wind_speed[h]).epsilon(1e-6));
  }
}

TEST_CASE("peak day and slicing") {
  LoadSeries l{std::vector<double>(72, 1.0)};
  l.demand_kw[30] = 5.0;
  CHECK(peak_load_day(l) == 1);
  Inputs in{testing::bundled().climate.slice(0, 72), l};
  const auto d = day_inputs(in, 1);
  CHECK(d.load.demand_kw[6] == 5.0);
  CHECK(d.climate.size() == 24);
  CHECK_THROWS_AS(day_inputs(in, 3), DomainError);
}

TEST_CASE("result documents") {
  RunConfig cfg;
  cfg.solver.max_evals = 400;
  cfg.workers = 1;
  const auto dir = testing::scratch_dir("results");
  RunOptions opts;
  opts.out_dir = dir;

  const json missing = run_command("size", cfg, opts);
  CHECK(missing["status"] == "error");
  CHECK(missing["error"]["kind"] == "input_error");

  cfg.seed = 42;
  const json a = run_command("size", cfg, opts);
  const json b = run_command("size", cfg, opts);
  REQUIRE(a["status"] == "ok");
  CHECK(a.dump() == b.dump());
  CHECK(a["seed"] == 42);
  CHECK(a["schema_version"] == kSchemaVersion);
  CHECK(config_from_json(a["config"]).seed == cfg.seed);
  CHECK(a["result"].contains("costs"));
  CHECK(a["result"]["baseline"].contains("lcoe_usd_per_kwh"));

  opts.solvers = {"pso", "ga", "sa", "ps", "ms"};
  const json bench = run_command("bench", cfg, opts);
  REQUIRE(bench["status"] == "ok");
  CHECK(bench["result"]["rows"].size() == 5);
  for (const auto& row : bench["result"]["rows"]) {
    CHECK(row["overall"].get<double>() ==
          doctest::Approx(row["runtime_s"].get<double>() * row["min_obj"].get<double>()));
  }
  CHECK(std::filesystem::exists(dir / "benchmark.csv"));

  RunConfig be = cfg;
  be.breakeven.tac_usd = 17097.0;
  be.breakeven.crf = 0.0582;
  be.breakeven.annual_load_kwh = 74251.0;
  const json bed = run_command("breakeven", be, opts);
  REQUIRE(bed["status"] == "ok");
  CHECK(std::abs(bed["result"]["break_even_distance_km"].get<double>() - 0.853) <= 0.01);

  const json nope = run_command("plot", cfg, opts);
  CHECK(nope["status"] == "error");

  RunConfig sim = cfg;
  sim.design = std::vector<double>{20, 3, 50};
  const json s = run_command("simulate", sim, opts);
  REQUIRE(s["status"] == "ok");
  CHECK(s["result"]["power_balance_ok"] == true);
  CHECK(std::filesystem::exists(dir / "trace.csv"));
}
