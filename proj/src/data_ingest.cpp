#include "hybridgrid/data_ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "hybridgrid/error.hpp"
#include "hybridgrid/rng.hpp"

namespace hybridgrid {

namespace {

constexpr const char* kClimateHeader = "timestamp,ghi_kw_m2,wind_ms,temp_c";
constexpr const char* kLoadHeader = "hour,load_kw";

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

MaybeValue parse_cell(const std::string& raw, std::size_t line_no, const char* column) {
  const std::string cell = trim(raw);
  if (cell.empty()) return std::nullopt;
  double value = 0.0;
  const auto* first = cell.data();
  const auto* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
    throw ParseError("line " + std::to_string(line_no) + ": column '" + column +
                     "' is not a number: '" + cell + "'");
  }
  return value;
}

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

void check_same_length(const ClimateSeries& a, const ClimateSeries& b) {
  if (a.size() != b.size()) {
    throw InputError("climate series lengths differ: " + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()));
  }
}

}  // namespace

bool ClimateSeries::is_complete() const { return missing_hours().empty(); }

std::vector<std::size_t> ClimateSeries::missing_hours() const {
  std::vector<std::size_t> hours;
  for (std::size_t t = 0; t < size(); ++t) {
    if (!irradiance[t] || !wind_speed[t] || !temperature[t]) hours.push_back(t);
  }
  return hours;
}

ClimateSeries ClimateSeries::from_dense(std::span<const double> irr, std::span<const double> wind,
                                        std::span<const double> temp, double ref_height) {
  if (irr.size() != wind.size() || irr.size() != temp.size()) {
    throw InputError("climate channels must have identical length");
  }
  ClimateSeries s;
  s.ref_height = ref_height;
  s.irradiance.assign(irr.begin(), irr.end());
  s.wind_speed.assign(wind.begin(), wind.end());
  s.temperature.assign(temp.begin(), temp.end());
  return s;
}

ClimateSeries ClimateSeries::slice(std::size_t first, std::size_t count) const {
  if (first + count > size()) throw DomainError("climate slice out of range");
  ClimateSeries s;
  s.ref_height = ref_height;
  auto cut = [&](const auto& v) { return std::vector(v.begin() + first, v.begin() + first + count); };
  if (!timestamps.empty()) s.timestamps = cut(timestamps);
  s.irradiance = cut(irradiance);
  s.wind_speed = cut(wind_speed);
  s.temperature = cut(temperature);
  return s;
}

DenseClimate densify(const ClimateSeries& series) {
  if (series.wind_speed.size() != series.size() || series.temperature.size() != series.size()) {
    throw InputError("climate channels must have identical length");
  }
  DenseClimate d;
  d.ref_height = series.ref_height;
  d.irradiance.resize(series.size());
  d.wind_speed.resize(series.size());
  d.temperature.resize(series.size());
  for (std::size_t t = 0; t < series.size(); ++t) {
    const MaybeValue* cells[] = {&series.irradiance[t], &series.wind_speed[t], &series.temperature[t]};
    const char* names[] = {"irradiance", "wind_speed", "temperature"};
    for (int c = 0; c < 3; ++c) {
      if (!*cells[c] || !std::isfinite(**cells[c])) {
        throw InputError(std::string(names[c]) + " missing or not finite at hour " + std::to_string(t));
      }
    }
    if (*series.irradiance[t] < 0.0 || *series.wind_speed[t] < 0.0) {
      throw InputError("negative irradiance or wind speed at hour " + std::to_string(t));
    }
    d.irradiance[t] = *series.irradiance[t];
    d.wind_speed[t] = *series.wind_speed[t];
    d.temperature[t] = *series.temperature[t];
  }
  return d;
}

double LoadSeries::total_kwh() const { return std::accumulate(demand_kw.begin(), demand_kw.end(), 0.0); }

double LoadSeries::peak_kw() const {
  return demand_kw.empty() ? 0.0 : *std::max_element(demand_kw.begin(), demand_kw.end());
}

ClimateSeries read_climate_csv(const std::filesystem::path& path, double ref_height) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open climate file: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw SchemaError(path.string() + ": empty file, header required");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (trim(line) != kClimateHeader) {
    throw SchemaError(path.string() + ": expected header '" + kClimateHeader + "', got '" + line + "'");
  }
  ClimateSeries s;
  s.ref_height = ref_height;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 4) {
      throw SchemaError("line " + std::to_string(line_no) + ": expected 4 columns, found " +
                        std::to_string(cells.size()));
    }
    std::string ts = trim(cells[0]);
    if (ts.empty()) throw ParseError("line " + std::to_string(line_no) + ": empty timestamp");
    // ISO-8601 strings in one fixed format sort lexicographically by time.
    if (!s.timestamps.empty() && ts <= s.timestamps.back()) {
      throw ParseError("line " + std::to_string(line_no) + ": timestamp '" + ts +
                       "' is not after the previous row");
    }
    s.timestamps.push_back(std::move(ts));
    s.irradiance.push_back(parse_cell(cells[1], line_no, "ghi_kw_m2"));
    s.wind_speed.push_back(parse_cell(cells[2], line_no, "wind_ms"));
    s.temperature.push_back(parse_cell(cells[3], line_no, "temp_c"));
  }
  return s;
}

void write_climate_csv(const std::filesystem::path& path, const ClimateSeries& series) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write climate file: " + path.string());
  out << kClimateHeader << '\n';
  auto cell = [](const MaybeValue& v) { return v ? format_double(*v) : std::string{}; };
  for (std::size_t t = 0; t < series.size(); ++t) {
    const std::string ts = t < series.timestamps.size() ? series.timestamps[t] : std::to_string(t);
    out << ts << ',' << cell(series.irradiance[t]) << ',' << cell(series.wind_speed[t]) << ','
        << cell(series.temperature[t]) << '\n';
  }
}

LoadSeries read_load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open load file: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw SchemaError(path.string() + ": empty file, header required");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (trim(line) != kLoadHeader) {
    throw SchemaError(path.string() + ": expected header '" + kLoadHeader + "', got '" + line + "'");
  }
  LoadSeries load;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 2) {
      throw SchemaError("line " + std::to_string(line_no) + ": expected 2 columns, found " +
                        std::to_string(cells.size()));
    }
    const auto hour = parse_cell(cells[0], line_no, "hour");
    const auto value = parse_cell(cells[1], line_no, "load_kw");
    if (!hour || !value) throw ParseError("line " + std::to_string(line_no) + ": load rows cannot have gaps");
    if (*hour != static_cast<double>(load.size())) {
      throw ParseError("line " + std::to_string(line_no) + ": expected hour " + std::to_string(load.size()));
    }
    if (*value < 0.0) throw ParseError("line " + std::to_string(line_no) + ": negative load");
    load.demand_kw.push_back(*value);
  }
  return load;
}

void write_load_csv(const std::filesystem::path& path, const LoadSeries& load) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write load file: " + path.string());
  out << kLoadHeader << '\n';
  for (std::size_t t = 0; t < load.size(); ++t) out << t << ',' << format_double(load.demand_kw[t]) << '\n';
}

ClimateSeries fill_gaps_by_neighbor_average(const ClimateSeries& primary,
                                            std::span<const ClimateSeries> neighbors) {
  for (const auto& n : neighbors) check_same_length(primary, n);
  ClimateSeries out = primary;
  std::vector<std::size_t> unrecoverable;

  auto fill_channel = [&](std::vector<MaybeValue> ClimateSeries::*channel) {
    auto& target = out.*channel;
    for (std::size_t t = 0; t < target.size(); ++t) {
      if (target[t]) continue;
      double sum = 0.0;
      int count = 0;
      for (const auto& n : neighbors) {
        if (const auto& v = (n.*channel)[t]) {
          sum += *v;
          ++count;
        }
      }
      if (count == 0) {
        unrecoverable.push_back(t);
      } else {
        target[t] = sum / count;
      }
    }
  };
  fill_channel(&ClimateSeries::irradiance);
  fill_channel(&ClimateSeries::wind_speed);
  fill_channel(&ClimateSeries::temperature);

  if (!unrecoverable.empty()) {
    std::sort(unrecoverable.begin(), unrecoverable.end());
    unrecoverable.erase(std::unique(unrecoverable.begin(), unrecoverable.end()), unrecoverable.end());
    std::string hours;
    for (std::size_t i = 0; i < unrecoverable.size() && i < 20; ++i) {
      hours += (i ? "," : "") + std::to_string(unrecoverable[i]);
    }
    if (unrecoverable.size() > 20) hours += ",...";
    throw UnrecoverableGapError("no neighbor value at hours [" + hours + "] (" +
                                std::to_string(unrecoverable.size()) + " total)");
  }
  return out;
}

ClimateSeries scale_wind(const ClimateSeries& series, double factor) {
  if (!(factor > 0.0)) throw DomainError("wind scale factor must be > 0");
  ClimateSeries out = series;
  for (auto& v : out.wind_speed) {
    if (v) *v *= factor;
  }
  return out;
}

LoadSeries generate_annual_load(const LoadSeries& daily, double variation, std::uint64_t seed) {
  if (daily.size() != 24) throw DomainError("daily load profile must have 24 entries");
  if (!(variation >= 0.0 && variation < 1.0)) throw DomainError("load variation must lie in [0, 1)");
  Engine eng{seed};
  LoadSeries annual;
  annual.demand_kw.reserve(8760);
  for (int day = 0; day < 365; ++day) {
    const double factor = day == 0 ? 1.0 : uniform(eng, 1.0 - variation, 1.0 + variation);
    for (double p : daily.demand_kw) annual.demand_kw.push_back(day == 0 ? p : p * factor);
  }
  return annual;
}

double empirical_village_load_at(double t) {
  return std::exp(std::sin(0.3409 - std::sin(0.68039 * t) - 0.16801 * t));
}

LoadSeries empirical_village_load(std::size_t hours) {
  if (hours == 0) throw DomainError("hours must be >= 1");
  LoadSeries load;
  load.demand_kw.resize(hours);
  for (std::size_t t = 0; t < hours; ++t) load.demand_kw[t] = empirical_village_load_at(static_cast<double>(t + 1));
  return load;
}

LoadSeries make_peaky_load(const LoadSeries& base, double amplitude, std::uint64_t seed) {
  if (!(amplitude >= 0.0 && amplitude < 1.0)) throw DomainError("amplitude must lie in [0, 1)");
  Engine eng{seed};
  LoadSeries out = base;
  for (auto& p : out.demand_kw) p *= uniform(eng, 1.0 - amplitude, 1.0 + amplitude);
  return out;
}

LoadSeries flatten_load(const LoadSeries& base, std::span<const double> res_profile, double curtail_fraction) {
  if (!(curtail_fraction >= 0.0 && curtail_fraction < 1.0)) {
    throw DomainError("curtail fraction must lie in [0, 1)");
  }
  if (res_profile.size() != base.size()) throw DomainError("RES profile length must match the load");
  const std::size_t n = base.size();
  const double total = base.total_kwh();
  if (n == 0 || total <= 0.0) return base;

  const double res_total = std::accumulate(res_profile.begin(), res_profile.end(), 0.0);
  std::vector<double> blended(n);
  for (std::size_t t = 0; t < n; ++t) {
    const double share = res_total > 0.0 ? std::max(res_profile[t], 0.0) / res_total : 1.0 / n;
    blended[t] = 0.5 * base.demand_kw[t] + 0.5 * share * total;
  }
  std::vector<double> smoothed(n);
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t lo = t == 0 ? 0 : t - 1;
    const std::size_t hi = std::min(n - 1, t + 1);
    double sum = 0.0;
    for (std::size_t k = lo; k <= hi; ++k) sum += blended[k];
    smoothed[t] = sum / static_cast<double>(hi - lo + 1);
  }
  const double smoothed_total = std::accumulate(smoothed.begin(), smoothed.end(), 0.0);
  const double scale = (1.0 - curtail_fraction) * total / smoothed_total;
  LoadSeries out;
  out.demand_kw.resize(n);
  for (std::size_t t = 0; t < n; ++t) out.demand_kw[t] = smoothed[t] * scale;
  return out;
}

}  // namespace hybridgrid
