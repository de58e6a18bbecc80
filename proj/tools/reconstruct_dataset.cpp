// Writes the reconstructed Timbila 2018 inputs into a data directory:
// the primary station (with wind gaps), four neighbor stations, the 24 h
// community load profile, and the processed annual climate and load.
//
// Only summary statistics of the original series are public, so the
// hourly values are synthetic: clear-sky irradiance times a daily cloud
// factor, a diurnal temperature wave, and Weibull (k = 2) winds with AR(1)
// persistence, rescaled to the published 0.86 m/s station mean.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hybridgrid/data_ingest.hpp"
#include "hybridgrid/rng.hpp"

namespace hg = hybridgrid;

namespace {

constexpr std::size_t kHours = 8760;
constexpr double kRawWindMean = 0.86;      // m/s at 1 m
constexpr double kWindCorrection = 3.70;
constexpr double kTargetInsolation = 5.8;  // kWh/m^2/day

std::string timestamp(std::size_t hour) {
  static constexpr std::array<int, 12> kDays{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  std::size_t day = hour / 24;
  int month = 0;
  while (day >= static_cast<std::size_t>(kDays[month])) day -= kDays[month++];
  char buf[32];
  std::snprintf(buf, sizeof buf, "2018-%02d-%02zuT%02zu:00:00", month + 1, day + 1, hour % 24);
  return buf;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

/// Daily community profile, kW. Morning and evening peaks, quiet nights.
hg::LoadSeries daily_profile() {
  std::vector<double> p{4.1, 3.6, 3.3, 3.21, 3.4, 4.6, 7.4, 9.8, 10.3, 10.0, 10.1, 10.5,
                        10.9, 10.6, 10.2, 10.1, 10.4, 11.3, 12.2, 12.52, 11.8, 9.9, 7.6, 5.4};
  // Scale the hours strictly between min and max so the day totals 203.52 kWh.
  const double lo = 3.21;
  const double hi = 12.52;
  const double target = 8.48 * 24.0;
  double fixed = 0.0;
  double free = 0.0;
  for (double v : p) (v == lo || v == hi ? fixed : free) += v - lo;
  const double k = (target - 24.0 * lo - fixed) / free;
  for (double& v : p) {
    if (v != lo && v != hi) v = lo + (v - lo) * k;
  }
  return hg::LoadSeries{p};
}

struct Truth {
  std::vector<double> irr;
  std::vector<double> wind;
  std::vector<double> temp;
};

Truth synthesize(std::uint64_t seed) {
  hg::Engine eng = hg::make_engine(seed, "climate");
  Truth t;
  t.irr.resize(kHours);
  t.wind.resize(kHours);
  t.temp.resize(kHours);

  double cloud = 0.8;
  double z = 0.0;
  const double rho = 0.85;
  for (std::size_t h = 0; h < kHours; ++h) {
    const std::size_t day = h / 24;
    const double hod = static_cast<double>(h % 24) + 0.5;
    if (h % 24 == 0) {
      // Persistent daily cloudiness, wetter around April and November.
      const double season = 0.08 * std::cos(4.0 * std::numbers::pi * (static_cast<double>(day) - 105.0) / 365.0);
      cloud = std::clamp(0.7 * cloud + 0.3 * (0.8 + season) + 0.12 * hg::standard_normal(eng), 0.25, 1.0);
    }
    const double sun = std::sin(std::numbers::pi * (hod - 6.4) / 12.2);
    const double hourly = std::clamp(1.0 + 0.08 * hg::standard_normal(eng), 0.6, 1.2);
    t.irr[h] = sun > 0.0 ? 1.0 * sun * cloud * hourly : 0.0;

    const double seasonal_t = 1.5 * std::cos(2.0 * std::numbers::pi * (static_cast<double>(day) - 45.0) / 365.0);
    t.temp[h] = 24.0 + seasonal_t + 5.0 * std::sin(2.0 * std::numbers::pi * (hod - 9.0) / 24.0) +
                0.6 * hg::standard_normal(eng);

    z = rho * z + std::sqrt(1.0 - rho * rho) * hg::standard_normal(eng);
    const double u = std::clamp(normal_cdf(z), 1e-12, 1.0 - 1e-12);
    const double weibull = std::sqrt(-std::log(1.0 - u));  // k = 2, unit scale
    const double diurnal = 1.0 + 0.35 * std::sin(2.0 * std::numbers::pi * (hod - 9.0) / 24.0);
    t.wind[h] = weibull * diurnal;
  }

  const double irr_day = std::accumulate(t.irr.begin(), t.irr.end(), 0.0) / 365.0;
  for (double& v : t.irr) v *= kTargetInsolation / irr_day;
  const double wind_mean = std::accumulate(t.wind.begin(), t.wind.end(), 0.0) / static_cast<double>(kHours);
  for (double& v : t.wind) v *= kRawWindMean / wind_mean;
  return t;
}

hg::ClimateSeries to_series(const std::vector<double>& irr, const std::vector<double>& wind,
                            const std::vector<double>& temp) {
  hg::ClimateSeries s = hg::ClimateSeries::from_dense(irr, wind, temp, 1.0);
  s.timestamps.resize(kHours);
  for (std::size_t h = 0; h < kHours; ++h) s.timestamps[h] = timestamp(h);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reconstruct the Timbila 2018 input data set"};
  std::filesystem::path out = "data";
  std::uint64_t seed = 2018;
  app.add_option("--out", out, "Output directory")->capture_default_str();
  app.add_option("--seed", seed, "Top-level seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  std::filesystem::create_directories(out);
  const Truth truth = synthesize(seed);

  // Neighbors see the same weather with their own bias and noise.
  hg::Engine eng = hg::make_engine(seed, "stations");
  std::vector<hg::ClimateSeries> neighbors;
  constexpr std::array<double, 4> kBias{0.92, 1.06, 0.97, 1.05};
  for (std::size_t s = 0; s < 4; ++s) {
    std::vector<double> irr(kHours), wind(kHours), temp(kHours);
    for (std::size_t h = 0; h < kHours; ++h) {
      irr[h] = std::max(0.0, truth.irr[h] * (1.0 + 0.03 * hg::standard_normal(eng)));
      wind[h] = std::max(0.0, truth.wind[h] * kBias[s] + 0.05 * hg::standard_normal(eng));
      temp[h] = truth.temp[h] + 0.3 * hg::standard_normal(eng);
    }
    neighbors.push_back(to_series(irr, wind, temp));
  }
  // Their own outages never overlap station 0's.
  for (std::size_t s = 1; s < 4; ++s) {
    for (std::size_t k = 0; k < 20; ++k) {
      const std::size_t start = hg::uniform_index(eng, kHours - 6);
      for (std::size_t h = start; h < start + 6; ++h) neighbors[s].wind_speed[h].reset();
    }
  }

  // Primary station: blocks of missing wind readings, a few missing temperatures.
  hg::ClimateSeries primary = to_series(truth.irr, truth.wind, truth.temp);
  std::size_t gaps = 0;
  for (std::size_t k = 0; k < 40; ++k) {
    const std::size_t start = hg::uniform_index(eng, kHours - 12);
    const std::size_t len = 1 + hg::uniform_index(eng, 12);
    for (std::size_t h = start; h < start + len; ++h) {
      if (primary.wind_speed[h]) ++gaps;
      primary.wind_speed[h].reset();
    }
  }
  for (std::size_t k = 0; k < 10; ++k) primary.temperature[hg::uniform_index(eng, kHours)].reset();

  hg::write_climate_csv(out / "timbila_2018_raw.csv", primary);
  for (std::size_t s = 0; s < neighbors.size(); ++s) {
    hg::write_climate_csv(out / ("neighbor_" + std::to_string(s + 1) + "_2018.csv"), neighbors[s]);
  }
  const hg::LoadSeries daily = daily_profile();
  hg::write_load_csv(out / "daily_load.csv", daily);

  const hg::ClimateSeries filled = hg::fill_gaps_by_neighbor_average(primary, neighbors);
  const hg::ClimateSeries scaled = hg::scale_wind(filled, kWindCorrection);
  hg::write_climate_csv(out / "timbila_2018.csv", scaled);
  const hg::LoadSeries annual = hg::generate_annual_load(daily, 0.2, hg::substream_seed(seed, "load-gen"));
  hg::write_load_csv(out / "load_2018.csv", annual);

  const auto mean = [](const std::vector<hg::MaybeValue>& v) {
    double s = 0.0;
    std::size_t n = 0;
    for (const auto& x : v) {
      if (x) {
        s += *x;
        ++n;
      }
    }
    return s / static_cast<double>(n);
  };
  std::printf("wind gaps filled: %zu h\n", gaps);
  std::printf("raw wind mean %.3f m/s, corrected %.3f m/s\n", mean(filled.wind_speed), mean(scaled.wind_speed));
  std::printf("insolation %.2f kWh/m2/day\n", mean(scaled.irradiance) * 24.0);
  std::printf("daily load %.2f kWh, peak %.2f kW; annual %.0f kWh, peak %.2f kW\n", daily.total_kwh(),
              daily.peak_kw(), annual.total_kwh(), annual.peak_kw());
  return 0;
}
