#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hybridgrid {

using MaybeValue = std::optional<double>;

/// Hourly climate record. Missing observations stay empty; they are never
/// replaced by a sentinel.
struct ClimateSeries {
  std::vector<std::string> timestamps;  // ISO-8601, may be empty for synthetic series
  std::vector<MaybeValue> irradiance;   // kW/m^2
  std::vector<MaybeValue> wind_speed;   // m/s at ref_height
  std::vector<MaybeValue> temperature;  // deg C
  double ref_height = 1.0;              // m

  std::size_t size() const { return irradiance.size(); }
  bool is_complete() const;
  /// Hour indices where any channel is missing.
  std::vector<std::size_t> missing_hours() const;

  /// Builds a complete series from dense vectors (all lengths must agree).
  static ClimateSeries from_dense(std::span<const double> irradiance,
                                  std::span<const double> wind_speed,
                                  std::span<const double> temperature,
                                  double ref_height = 1.0);

  /// Contiguous slice [first, first + count).
  ClimateSeries slice(std::size_t first, std::size_t count) const;
};

/// Dense, validated view of a complete ClimateSeries used by the simulators.
struct DenseClimate {
  std::vector<double> irradiance;
  std::vector<double> wind_speed;
  std::vector<double> temperature;
  double ref_height = 1.0;

  std::size_t size() const { return irradiance.size(); }
};

/// Throws InputError naming the first missing or non-finite cell, or a
/// negative irradiance / wind value.
DenseClimate densify(const ClimateSeries& series);

struct LoadSeries {
  std::vector<double> demand_kw;

  std::size_t size() const { return demand_kw.size(); }
  double total_kwh() const;
  double peak_kw() const;
};

/// Reads `timestamp,ghi_kw_m2,wind_ms,temp_c`. Empty cells become missing
/// values. Rows must be in strictly increasing timestamp order.
ClimateSeries read_climate_csv(const std::filesystem::path& path, double ref_height = 1.0);
void write_climate_csv(const std::filesystem::path& path, const ClimateSeries& series);

/// Reads `hour,load_kw`.
LoadSeries read_load_csv(const std::filesystem::path& path);
void write_load_csv(const std::filesystem::path& path, const LoadSeries& load);

/// Replaces each missing primary value with the mean of the neighbors that
/// have a value at that hour. Applies to all three channels.
ClimateSeries fill_gaps_by_neighbor_average(const ClimateSeries& primary,
                                            std::span<const ClimateSeries> neighbors);

/// Multiplies the wind channel by `factor` (> 0); missing cells stay missing.
ClimateSeries scale_wind(const ClimateSeries& series, double factor);

/// Repeats a 24 h profile over 365 days. Day 1 is `daily` verbatim; every
/// later day is scaled by one factor drawn from U[1 - variation, 1 + variation].
LoadSeries generate_annual_load(const LoadSeries& daily, double variation, std::uint64_t seed);

/// Empirical village demand exp(sin(0.3409 - sin(0.68039 t) - 0.16801 t)) kW.
double empirical_village_load_at(double t);
/// Evaluates empirical_village_load_at for t = 1..hours.
LoadSeries empirical_village_load(std::size_t hours);

/// Independent per-hour scaling by U[1 - amplitude, 1 + amplitude].
LoadSeries make_peaky_load(const LoadSeries& base, double amplitude, std::uint64_t seed);

/// Shifts demand toward the shape of `res_profile`, smooths it with a
/// centered 3 h moving average, restores the original energy, then applies a
/// uniform curtailment of `curtail_fraction`.
LoadSeries flatten_load(const LoadSeries& base, std::span<const double> res_profile,
                        double curtail_fraction);

}  // namespace hybridgrid
