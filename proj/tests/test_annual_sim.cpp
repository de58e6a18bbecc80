#include <algorithm>
#include <map>
#include <memory>

#include "doctest.h"
#include "hybridgrid/annual_sim.hpp"
#include "hybridgrid/data_ingest.hpp"
#include "hybridgrid/error.hpp"
#include "hybridgrid/rng.hpp"
#include "support.hpp"

using namespace hybridgrid;

namespace {

/// Bundled climate with the 24 h profile repeated (peak 12.52 kW).
const SimulationContext& steady_context(double dg_rated) {
  static std::map<double, std::unique_ptr<SimulationContext>> cache;
  auto& slot = cache[dg_rated];
  if (!slot) {
    const auto daily = read_load_csv(bundled_data_dir() / "daily_load.csv");
    SystemSpec spec;
    spec.generator.rated_power = dg_rated;
    const std::optional<Baseline> base =
        dg_rated > 0.0 ? std::nullopt : std::optional<Baseline>(testing::bundled_context().baseline());
    slot = std::make_unique<SimulationContext>(testing::bundled().climate, generate_annual_load(daily, 0.0, 1), spec,
                                               base);
  }
  return *slot;
}

void check_invariants(const SimResult& r, const SystemSpec& spec) {
  const auto& t = *r.traces;
  const double pmin = spec.generator.min_power();
  for (std::size_t h = 0; h < t.size(); ++h) {
    CHECK(t.soc[h] >= spec.battery.soc_min - 1e-9);
    CHECK(t.soc[h] <= spec.battery.soc_max + 1e-9);
    CHECK((t.p_dg[h] == 0.0 || (t.p_dg[h] >= pmin - 1e-9 && t.p_dg[h] <= spec.generator.rated_power + 1e-9)));
    CHECK(t.p_pv[h] >= 0.0);
    CHECK(t.p_wt[h] >= 0.0);
    CHECK(t.p_dump[h] >= 0.0);
    CHECK(t.p_lost[h] >= 0.0);
  }
  CHECK(hourly_power_balance_check(t, spec.converter));
}

}  // namespace

TEST_CASE("dg-only system") {
  const auto& ctx = steady_context(16.0);
  const auto r = simulate_year(Design::counts(0, 0, 0), ctx);
  CHECK(r.objectives.dpsp == 0.0);
  CHECK(r.objectives.one_minus_ref == 1.0);
  CHECK(sizing_objective(Design::counts(0, 0, 0), ctx, Weights{{0, 0, 1, 0, 0}}) == 0.0);
}

TEST_CASE("nothing generates") {
  const auto& ctx = steady_context(0.0);
  CHECK(simulate_year(Design::counts(0, 0, 0), ctx).objectives.dpsp == doctest::Approx(1.0));
}

TEST_CASE("simulator invariants on random designs") {
  const auto& ctx = testing::bundled_context();
  Engine eng(17);
  for (int i = 0; i < 15; ++i) {
    const Design d = Design::counts(static_cast<double>(uniform_index(eng, 101)),
                                    static_cast<double>(uniform_index(eng, 31)), uniform(eng, 0.0, 200.0));
    CAPTURE(d.pv);
    CAPTURE(d.wt);
    CAPTURE(d.battery_kwh);
    const auto r = simulate_year(d, ctx, true);
    check_invariants(r, ctx.spec());
    if (d.pv == 0 && d.wt == 0) CHECK(r.objectives.one_minus_ref == 1.0);
  }
}

TEST_CASE("capacity-mode designs") {
  const auto& ctx = testing::bundled_context();
  const auto a = simulate_year(Design::counts(20, 4, 50), ctx);
  const auto b = simulate_year(Design::capacities(20 * 0.255, 4 * 3.5, 50), ctx);
  CHECK(a.objectives.lcoe_norm == doctest::Approx(b.objectives.lcoe_norm));
  CHECK(a.dump_kwh == doctest::Approx(b.dump_kwh));
}

TEST_CASE("power balance detector") {
  const auto& ctx = testing::bundled_context();
  const auto r = simulate_year(Design::counts(40, 5, 80), ctx, true);
  SimTraces t = *r.traces;
  CHECK(power_balance_violations(t, ctx.spec().converter).empty());
  t.p_dump[5] += 1.0;
  CHECK(power_balance_violations(t, ctx.spec().converter) == std::vector<std::size_t>{5});

  SimTraces zeros;
  for (auto* v : {&zeros.p_pv, &zeros.p_wt, &zeros.p_res, &zeros.p_dg, &zeros.p_bs, &zeros.soc, &zeros.p_dump,
                  &zeros.p_lost, &zeros.load}) {
    v->assign(4, 0.0);
  }
  CHECK(hourly_power_balance_check(zeros, ctx.spec().converter));
}

TEST_CASE("dg charging the battery only reroutes dump") {
  SystemSpec no_charge = testing::bundled_context().spec();
  no_charge.strategy.dg_may_charge_battery = false;
  const SimulationContext off(testing::bundled().climate, testing::bundled().load, no_charge,
                              testing::bundled_context().baseline());
  for (const Design& d : {Design::counts(10, 2, 30), Design::counts(60, 10, 150), Design::counts(0, 0, 20)}) {
    const auto with = simulate_year(d, testing::bundled_context());
    const auto without = simulate_year(d, off);
    CHECK(without.dump_kwh >= with.dump_kwh - 1e-9);
  }
}

TEST_CASE("simulation is deterministic") {
  const auto& ctx = testing::bundled_context();
  const auto a = simulate_year(Design::counts(33, 7, 99), ctx, true);
  const auto b = simulate_year(Design::counts(33, 7, 99), ctx, true);
  CHECK(a.traces->soc == b.traces->soc);
  CHECK(a.traces->p_dg == b.traces->p_dg);
  CHECK(a.costs.lcoe == b.costs.lcoe);
}

TEST_CASE("bad designs are rejected") {
  const auto& ctx = testing::bundled_context();
  CHECK_THROWS_AS(simulate_year(Design::counts(-1, 0, 0), ctx), DomainError);
  CHECK_THROWS_AS(simulate_year(Design::counts(1.5, 0, 0), ctx), DomainError);
}

TEST_CASE("rule-based hour") {
  const SystemSpec spec;
  // surplus charges first, then dumps
  auto h = rule_based_hour(10.0, 4.5, 2.0, 5.0, spec);
  CHECK(h.p_bs == doctest::Approx(-2.0));
  CHECK(h.dump == doctest::Approx(10.0 - 5.0 - 2.0));
  CHECK(h.p_dg == 0.0);
  // deficit met by the battery
  h = rule_based_hour(1.0, 4.5, 2.0, 5.0, spec);
  CHECK(h.p_bs == doctest::Approx(4.0));
  CHECK(h.p_dg == 0.0);
  // 1 kW beyond the battery starts the generator at P_min = 4.8 kW; its
  // 4.32 kW on the bus covers the deficit and backs the battery off
  h = rule_based_hour(0.0, 4.5, 3.0, 4.0, spec);
  CHECK(h.p_dg == doctest::Approx(4.8));
  CHECK(h.p_bs == doctest::Approx(4.0 - (4.32 - 1.0)));
  CHECK(h.dump == doctest::Approx(0.0));
  CHECK(h.lost == 0.0);

  SystemSpec no_charge = spec;
  no_charge.strategy.dg_may_charge_battery = false;
  h = rule_based_hour(0.0, 4.5, 3.0, 3.0, no_charge);
  CHECK(h.p_dg == doctest::Approx(4.8));
  CHECK(h.p_bs == doctest::Approx(3.0));
  CHECK(h.dump == doctest::Approx(4.32 - 2.0));

  // generator too small: the rest is lost at the customer side
  SystemSpec tiny = spec;
  tiny.generator.rated_power = 2.0;
  h = rule_based_hour(0.0, 4.5, 0.0, 0.0, tiny);
  CHECK(h.p_dg == doctest::Approx(2.0));
  CHECK(h.lost == doctest::Approx((5.0 - 1.8) * 0.9));
}
