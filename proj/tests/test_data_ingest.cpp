#include <cmath>
#include <numeric>

#include "doctest.h"
#include "hybridgrid/data_ingest.hpp"
#include "hybridgrid/error.hpp"
#include "hybridgrid/rng.hpp"
#include "support.hpp"

using namespace hybridgrid;

namespace {

ClimateSeries wind_only(std::vector<MaybeValue> wind) {
  ClimateSeries s;
  s.wind_speed = std::move(wind);
  s.irradiance.assign(s.wind_speed.size(), 0.5);
  s.temperature.assign(s.wind_speed.size(), 25.0);
  return s;
}

double sum(const LoadSeries& l) { return std::accumulate(l.demand_kw.begin(), l.demand_kw.end(), 0.0); }

}  // namespace

TEST_CASE("climate csv round trip keeps missing cells") {
  const auto dir = testing::scratch_dir("climate_rt");
  ClimateSeries s = ClimateSeries::from_dense(std::vector<double>{0.0, 0.4, 0.8}, std::vector<double>{1, 2, 3},
                                              std::vector<double>{20, 21, 22});
  s.timestamps = {"2018-01-01T00:00:00", "2018-01-01T01:00:00", "2018-01-01T02:00:00"};
  s.wind_speed[1].reset();
  write_climate_csv(dir / "c.csv", s);
  const ClimateSeries back = read_climate_csv(dir / "c.csv");
  REQUIRE(back.size() == 3);
  CHECK_FALSE(back.wind_speed[1].has_value());
  CHECK(*back.wind_speed[2] == 3.0);
  CHECK(*back.irradiance[2] == 0.8);
  CHECK(back.missing_hours() == std::vector<std::size_t>{1});
}

TEST_CASE("climate csv errors") {
  const auto dir = testing::scratch_dir("climate_err");
  const std::string header = "timestamp,ghi_kw_m2,wind_ms,temp_c\n";
  testing::write_text(dir / "bad_cell.csv", header + "2018-01-01T00:00:00,0.1,1.0,20\n2018-01-01T01:00:00,0.1,fast,20\n");
  testing::write_text(dir / "bad_cols.csv", header + "2018-01-01T00:00:00,0.1,1.0\n");
  testing::write_text(dir / "bad_header.csv", "time,ghi,wind,temp\n");
  testing::write_text(dir / "unordered.csv",
                      header + "2018-01-01T01:00:00,0.1,1.0,20\n2018-01-01T00:00:00,0.1,1.0,20\n");

  CHECK_THROWS_AS(read_climate_csv(dir / "bad_cell.csv"), ParseError);
  try {
    read_climate_csv(dir / "bad_cell.csv");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(read_climate_csv(dir / "bad_cols.csv"), SchemaError);
  CHECK_THROWS_AS(read_climate_csv(dir / "bad_header.csv"), SchemaError);
  CHECK_THROWS_AS(read_climate_csv(dir / "unordered.csv"), ParseError);
  CHECK_THROWS_AS(read_climate_csv(dir / "absent.csv"), InputError);
}

TEST_CASE("24 row climate file is accepted") {
  const auto dir = testing::scratch_dir("climate_day");
  const auto& year = testing::bundled().climate;
  write_climate_csv(dir / "day.csv", year.slice(0, 24));
  CHECK(read_climate_csv(dir / "day.csv").size() == 24);
}

TEST_CASE("load csv") {
  const auto dir = testing::scratch_dir("load");
  write_load_csv(dir / "l.csv", LoadSeries{{1.5, 2.5, 0.0}});
  CHECK(read_load_csv(dir / "l.csv").demand_kw == std::vector<double>{1.5, 2.5, 0.0});
  testing::write_text(dir / "neg.csv", "hour,load_kw\n0,-1\n");
  testing::write_text(dir / "gap.csv", "hour,load_kw\n0,\n");
  CHECK_THROWS_AS(read_load_csv(dir / "neg.csv"), ParseError);
  CHECK_THROWS_AS(read_load_csv(dir / "gap.csv"), ParseError);
}

TEST_CASE("neighbor gap filling") {
  SUBCASE("mean of two neighbors") {
    const auto primary = wind_only({1.0, std::nullopt});
    const std::vector<ClimateSeries> n{wind_only({1.0, 2.0}), wind_only({1.0, 4.0})};
    CHECK(*fill_gaps_by_neighbor_average(primary, n).wind_speed[1] == doctest::Approx(3.0));
  }
  SUBCASE("missing neighbors are skipped") {
    const auto primary = wind_only({std::nullopt});
    const std::vector<ClimateSeries> n{wind_only({std::nullopt}), wind_only({1.0}), wind_only({2.0}),
                                       wind_only({3.0})};
    CHECK(*fill_gaps_by_neighbor_average(primary, n).wind_speed[0] == doctest::Approx(2.0));
  }
  SUBCASE("complete primary is unchanged") {
    const auto primary = wind_only({1.0, 2.0});
    const std::vector<ClimateSeries> n{wind_only({9.0, 9.0})};
    const auto out = fill_gaps_by_neighbor_average(primary, n);
    CHECK(out.wind_speed == primary.wind_speed);
  }
  SUBCASE("hours nobody observed raise an error") {
    const auto primary = wind_only({std::nullopt, 1.0, std::nullopt});
    const std::vector<ClimateSeries> n{wind_only({std::nullopt, 1.0, std::nullopt})};
    CHECK_THROWS_AS(fill_gaps_by_neighbor_average(primary, n), UnrecoverableGapError);
  }
  SUBCASE("idempotent and commutes with scaling") {
    const auto primary = wind_only({1.0, std::nullopt, 3.0, std::nullopt});
    const std::vector<ClimateSeries> n{wind_only({1.1, 2.2, 3.3, std::nullopt}), wind_only({0.9, 1.8, 2.7, 4.0})};
    const auto once = fill_gaps_by_neighbor_average(primary, n);
    CHECK(fill_gaps_by_neighbor_average(once, n).wind_speed == once.wind_speed);

    std::vector<ClimateSeries> scaled_n;
    for (const auto& s : n) scaled_n.push_back(scale_wind(s, 3.7));
    const auto a = scale_wind(once, 3.7);
    const auto b = fill_gaps_by_neighbor_average(scale_wind(primary, 3.7), scaled_n);
    for (std::size_t h = 0; h < a.size(); ++h) CHECK(*a.wind_speed[h] == doctest::Approx(*b.wind_speed[h]));
  }
}

TEST_CASE("scale_wind") {
  const auto s = wind_only({1.0, 2.0, std::nullopt, 3.0});
  const auto d = scale_wind(s, 2.0);
  CHECK(*d.wind_speed[0] == 2.0);
  CHECK(*d.wind_speed[3] == 6.0);
  CHECK_FALSE(d.wind_speed[2].has_value());
  CHECK(d.irradiance == s.irradiance);
  CHECK(scale_wind(s, 1.0).wind_speed == s.wind_speed);
  CHECK_THROWS_AS(scale_wind(s, 0.0), DomainError);
  CHECK_THROWS_AS(scale_wind(s, -1.0), DomainError);

  const auto bundled = testing::bundled().climate;
  double mean = 0.0;
  for (const auto& v : bundled.wind_speed) mean += *v;
  mean /= static_cast<double>(bundled.size());
  // corrected series averages 0.86 m/s x 3.70
  CHECK(mean == doctest::Approx(0.86 * 3.70).epsilon(0.01));
}

TEST_CASE("annual load generation") {
  std::vector<double> daily(24);
  for (std::size_t h = 0; h < 24; ++h) daily[h] = 2.0 + std::sin(static_cast<double>(h));
  const LoadSeries d{daily};

  const auto flat = generate_annual_load(d, 0.0, 5);
  REQUIRE(flat.size() == 8760);
  for (std::size_t i = 0; i < 8760; ++i) CHECK(flat.demand_kw[i] == daily[i % 24]);

  const auto a = generate_annual_load(d, 0.2, 5);
  const auto b = generate_annual_load(d, 0.2, 5);
  CHECK(a.demand_kw == b.demand_kw);
  for (std::size_t h = 0; h < 24; ++h) CHECK(a.demand_kw[h] == daily[h]);
  for (std::size_t day = 0; day < 365; ++day) {
    const double k = a.demand_kw[day * 24] / daily[0];
    CHECK(k >= 0.8);
    CHECK(k <= 1.2);
    for (std::size_t h = 1; h < 24; ++h) CHECK(a.demand_kw[day * 24 + h] / daily[h] == doctest::Approx(k));
  }
  CHECK(generate_annual_load(d, 0.2, 6).demand_kw != a.demand_kw);
  CHECK_THROWS_AS(generate_annual_load(d, 1.0, 5), DomainError);
  CHECK_THROWS_AS(generate_annual_load(LoadSeries{{1.0}}, 0.2, 5), DomainError);
}

TEST_CASE("empirical village load") {
  CHECK(empirical_village_load_at(0.0) == doctest::Approx(std::exp(std::sin(0.3409))));
  CHECK(empirical_village_load_at(0.0) == doctest::Approx(1.397).epsilon(1e-3));
  const auto l = empirical_village_load(100);
  CHECK(l.size() == 100);
  CHECK(l.demand_kw[0] == doctest::Approx(std::exp(std::sin(0.3409 - std::sin(0.68039) - 0.16801))));
  for (double v : l.demand_kw) CHECK(v > 0.0);
  CHECK_THROWS_AS(empirical_village_load(0), DomainError);
}

TEST_CASE("peaky load") {
  const LoadSeries base{std::vector<double>(48, 5.0)};
  CHECK(make_peaky_load(base, 0.0, 3).demand_kw == base.demand_kw);
  const auto p = make_peaky_load(base, 0.3, 3);
  for (double v : p.demand_kw) {
    CHECK(v >= 3.5);
    CHECK(v <= 6.5);
  }
  CHECK(make_peaky_load(base, 0.3, 3).demand_kw == p.demand_kw);
  CHECK_THROWS_AS(make_peaky_load(base, 1.0, 3), DomainError);
}

TEST_CASE("flatten load") {
  hybridgrid::Engine eng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> load(24), res(24);
    for (std::size_t h = 0; h < 24; ++h) {
      load[h] = uniform(eng, 1.0, 15.0);
      res[h] = uniform(eng, 0.0, 10.0);
    }
    const LoadSeries base{load};
    CHECK(sum(flatten_load(base, res, 0.0)) == doctest::Approx(sum(base)).epsilon(1e-3));
    CHECK(sum(flatten_load(base, res, 0.1)) == doctest::Approx(0.9 * sum(base)).epsilon(1e-3));
  }
  const LoadSeries constant{std::vector<double>(24, 4.0)};
  const auto out = flatten_load(constant, std::vector<double>(24, 2.0), 0.0);
  for (double v : out.demand_kw) CHECK(v == doctest::Approx(4.0));
  CHECK_THROWS_AS(flatten_load(constant, std::vector<double>(23, 1.0), 0.0), DomainError);
  CHECK_THROWS_AS(flatten_load(constant, std::vector<double>(24, 1.0), 1.0), DomainError);
}

TEST_CASE("densify rejects gaps and negatives") {
  auto s = wind_only({1.0, std::nullopt});
  CHECK_THROWS_AS(densify(s), InputError);
  auto n = wind_only({1.0, -0.5});
  CHECK_THROWS_AS(densify(n), InputError);
  CHECK(densify(wind_only({1.0, 2.0})).size() == 2);
}
