#include <cmath>

#include "doctest.h"
#include "hybridgrid/dispatch_opt.hpp"
#include "hybridgrid/economics.hpp"
#include "hybridgrid/workflows.hpp"
#include "support.hpp"

using namespace hybridgrid;

namespace {

ClimateSeries calm(std::size_t hours) {
  return ClimateSeries::from_dense(std::vector<double>(hours, 0.0), std::vector<double>(hours, 0.0),
                                   std::vector<double>(hours, 25.0));
}

DispatchSchedule flat(std::size_t hours, double p_dg, double p_bs) {
  DispatchSchedule s;
  s.p_dg.assign(hours, p_dg);
  s.p_bs.assign(hours, p_bs);
  s.soc.assign(hours + 1, 0.0);
  return s;
}

DispatchParams quick(std::uint64_t seed = 1) {
  DispatchParams p;
  p.seed = seed;
  p.workers = 1;
  p.inner_max_evals = 1500;
  p.anneal_patterns = 60;
  return p;
}

void check_hard_constraints(const DispatchSchedule& s, const DispatchEvaluation& e, const DispatchContext& ctx) {
  const auto& g = ctx.spec.generator;
  for (std::size_t h = 0; h < s.hours(); ++h) {
    CHECK((s.p_dg[h] == 0.0 || (s.p_dg[h] >= g.min_power() - 1e-9 && s.p_dg[h] <= g.rated_power + 1e-9)));
    CHECK(std::abs(s.p_bs[h]) <= ctx.battery_power_limit() + 1e-9);
  }
  REQUIRE(e.soc.size() == s.hours() + 1);
  for (double soc : e.soc) {
    CHECK(soc >= ctx.spec.battery.soc_min - 1e-9);
    CHECK(soc <= ctx.spec.battery.soc_max + 1e-9);
  }
  CHECK(e.dpsp <= ctx.dpsp_max + 1e-12);
}

}  // namespace

TEST_CASE("idle schedule on a calm day") {
  const SystemSpec spec;
  const Design d = Design::counts(15, 4, 100);
  const LoadSeries load{std::vector<double>(24, 6.0)};
  const auto ctx = DispatchContext::make(spec, d, calm(24), load);
  const auto e = evaluate_schedule(flat(24, 0.0, 0.0), ctx);
  CHECK(e.dpsp == doctest::Approx(1.0));
  const auto ic = initial_capital(d, spec);
  const double fixed = (0.01 * ic.pv + 0.03 * ic.wt + 0.01 * ic.battery + 0.02 * ic.generator) / 365.0;
  CHECK(e.c_daily == doctest::Approx(fixed));
  CHECK(e.coe == doctest::Approx(fixed / 144.0));
  CHECK_FALSE(e.feasible);
}

TEST_CASE("generator alone meets a flat load") {
  const SystemSpec spec;
  // 16 kW x eta_rec x eta_inv = 12.96 kW at the customer
  const LoadSeries load{std::vector<double>(24, 16.0 * 0.81)};
  const auto ctx = DispatchContext::make(spec, Design::counts(0, 0, 0), calm(24), load);
  const auto e = evaluate_schedule(flat(24, 16.0, 0.0), ctx);
  CHECK(e.ref == 0.0);
  CHECK(e.repg == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(e.dpsp == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(e.feasible);
}

TEST_CASE("two-hour daily cost by hand") {
  const SystemSpec spec;
  const LoadSeries load{{8.1, 8.1}};
  const auto ctx = DispatchContext::make(spec, Design::counts(0, 0, 0), calm(2), load);
  const auto e = evaluate_schedule(flat(2, 10.0, 0.0), ctx);
  const double fuel_l = 0.246 * 10.0 + 0.08145 * 16.0;
  const double fuel = 2.0 * fuel_l * 3.20 / 3.78541;
  const double om_var = 2.0 * 0.24;
  const double start_stop = 0.45 + 0.23;
  const double fixed = 0.02 * 781.25 * 16.0 / 365.0;
  CHECK(e.c_daily == doctest::Approx(fuel + om_var + start_stop + fixed));
  CHECK(e.dg_startups == 1);
  CHECK(e.dg_shutdowns == 1);
  CHECK(e.coe == doctest::Approx(e.c_daily / 16.2));
  CHECK(e.emissions_kg == doctest::Approx(20.0 * spec.generator.emissions.total_kg_per_kwh()));
}

TEST_CASE("constraint residuals") {
  const SystemSpec spec;
  const LoadSeries load{std::vector<double>(24, 5.0)};
  const auto ctx = DispatchContext::make(spec, Design::counts(0, 0, 27), calm(24), load);
  // 2 kW is below P_min; 10 kW from a 27 kWh bank exceeds its 7.36 kW limit
  auto s = flat(24, 2.0, 0.0);
  CHECK(evaluate_schedule(s, ctx).dg_violation > 0.0);
  s = flat(24, 0.0, 10.0);
  const auto e = evaluate_schedule(s, ctx);
  CHECK(e.bs_violation > 0.0);
  CHECK(e.soc_violation > 0.0);
  CHECK_FALSE(e.feasible);
}

TEST_CASE("rule-based and constant schedules") {
  const auto& in = testing::bundled();
  const auto day = day_inputs(in, peak_load_day(in.load));
  const auto ctx = DispatchContext::make(SystemSpec{}, Design::counts(15, 4, 106.53), day.climate, day.load);
  const auto rb = rule_based_schedule(ctx);
  CHECK(rb.hours() == 24);
  CHECK(rb.soc.size() == 25);
  const auto c = constant_schedule(ctx, 7.0, 1.0);
  for (double v : c.p_dg) CHECK(v == 7.0);
  const auto low = constant_schedule(ctx, 2.0, 1e3);
  for (double v : low.p_dg) CHECK(v == doctest::Approx(ctx.spec.generator.min_power()));
  for (double v : low.p_bs) CHECK(v == doctest::Approx(ctx.battery_power_limit()));
}

TEST_CASE("optimized day dominates the rule-based schedule") {
  const auto& in = testing::bundled();
  // a day whose peak the 16 kW generator can carry
  const auto day = day_inputs(in, 40);
  const auto ctx = DispatchContext::make(SystemSpec{}, Design::counts(15, 4, 106.53), day.climate, day.load);
  const auto r = optimize_day(ctx, quick());
  REQUIRE(r.feasible);
  CHECK(r.evaluation.weighted <= r.rule_based.weighted + 1e-12);
  check_hard_constraints(r.schedule, r.evaluation, ctx);

  const auto again = optimize_day(ctx, quick());
  CHECK(again.schedule.p_dg == r.schedule.p_dg);
  CHECK(again.schedule.p_bs == r.schedule.p_bs);
}

TEST_CASE("zero shortage allowance") {
  const LoadSeries load{std::vector<double>{4, 4, 5, 6, 8, 9, 10, 11, 12, 12, 11, 10, 9, 9, 10, 11, 12, 12.5, 12, 10,
                                            8, 6, 5, 4}};
  const auto& day = testing::bundled().climate.slice(24 * 100, 24);
  const auto ctx =
      DispatchContext::make(SystemSpec{}, Design::counts(10, 2, 40), day, load, Weights::equal(4), 0.0);
  const auto r = optimize_day(ctx, quick());
  REQUIRE(r.feasible);
  CHECK(r.evaluation.dpsp <= 1e-9);
}

TEST_CASE("cost-only weights") {
  const auto& in = testing::bundled();
  const auto day = day_inputs(in, 40);
  const auto ctx = DispatchContext::make(SystemSpec{}, Design::counts(15, 4, 106.53), day.climate, day.load,
                                         Weights{{1, 0, 0, 0}});
  const auto r = optimize_day(ctx, quick());
  REQUIRE(r.feasible);
  for (const auto& seed : {rule_based_schedule(ctx), constant_schedule(ctx, 7.0, 1.0)}) {
    const auto e = evaluate_schedule(seed, ctx);
    if (e.feasible) CHECK(r.evaluation.coe_norm <= e.coe_norm + 1e-12);
  }
}

TEST_CASE("climate scaling") {
  const auto day = testing::bundled().climate.slice(0, 24);
  const auto same = scenario_scale_climate(day, 1.0, 1.0);
  CHECK(same.irradiance == day.irradiance);
  CHECK(same.wind_speed == day.wind_speed);
  const auto dim = scenario_scale_climate(day, 0.1, 1.0);
  for (std::size_t h = 0; h < 24; ++h) {
    CHECK(*dim.irradiance[h] == doctest::Approx(0.1 * *day.irradiance[h]));
    CHECK(*dim.wind_speed[h] == *day.wind_speed[h]);
  }
  const auto both = scenario_scale_climate(day, 0.1, 0.1);
  CHECK(*both.wind_speed[3] == doctest::Approx(0.1 * *day.wind_speed[3]));
}

TEST_CASE("robustness suite records failures and keeps going") {
  const auto& in = testing::bundled();
  const auto day = day_inputs(in, 40);
  const Design d = Design::counts(15, 4, 106.53);
  std::vector<Scenario> sc{{"baseline", 1.0, 1.0, std::nullopt},
                           {"broken", 1.0, 1.0, LoadSeries{{1.0, 2.0}}},
                           {"low_wind", 1.0, 0.1, std::nullopt}};
  const auto rows = robustness_suite(SystemSpec{}, d, day.climate, day.load, sc, quick());
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].error.empty());
  CHECK_FALSE(rows[1].error.empty());
  CHECK(rows[2].error.empty());

  const auto direct = optimize_day(DispatchContext::make(SystemSpec{}, d, day.climate, day.load), quick());
  CHECK(rows[0].result.evaluation.weighted == direct.evaluation.weighted);

  const auto dir = testing::scratch_dir("scenarios");
  write_scenario_csv(dir / "s.csv", rows);
  CHECK(std::filesystem::file_size(dir / "s.csv") > 0);
}
