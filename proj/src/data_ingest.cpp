#include "pvsizing/data_ingest.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <string_view>

#include "pvsizing/random.hpp"

namespace pvsizing {

namespace {

constexpr std::size_t kHoursPerDay = 24;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string where(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line) + ": ";
}

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

/// Hours since 1970-01-01T00 for "YYYY-MM-DDTHH[:00[:00]]" (a space may replace 'T').
std::optional<std::int64_t> parse_hour_stamp(std::string_view s) {
  if (s.size() < 13 || s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != ' ')) return std::nullopt;
  int y = 0;
  unsigned mo = 0, d = 0, h = 0;
  if (!parse_int(s.substr(0, 4), y) || !parse_int(s.substr(5, 2), mo) || !parse_int(s.substr(8, 2), d) ||
      !parse_int(s.substr(11, 2), h))
    return std::nullopt;
  auto rest = s.substr(13);
  if (!rest.empty() && rest.back() == 'Z') rest.remove_suffix(1);
  if (!(rest.empty() || rest == ":00" || rest == ":00:00")) return std::nullopt;
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{mo}, std::chrono::day{d}};
  if (!ymd.ok() || h > 23) return std::nullopt;
  const auto days = std::chrono::sys_days{ymd}.time_since_epoch().count();
  return static_cast<std::int64_t>(days) * 24 + h;
}

std::string format_hour_stamp(std::int64_t hours_since_epoch) {
  const auto day_index = static_cast<int>(std::floor(static_cast<double>(hours_since_epoch) / 24.0));
  const auto hour = static_cast<int>(hours_since_epoch - static_cast<std::int64_t>(day_index) * 24);
  const std::chrono::year_month_day ymd{std::chrono::sys_days{std::chrono::days{day_index}}};
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%04d-%02u-%02uT%02d:00", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), hour);
  return buf.data();
}

std::string format_value(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace

const char* units_of(SeriesKind kind) { return kind == SeriesKind::kDemand ? "kW" : "W/m2"; }

HourlySeries::HourlySeries(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] >= 0.0) || !std::isfinite(values_[i]))
      throw NegativeValue("hour " + std::to_string(i) + ": value must be finite and >= 0 (got " +
                          format_value(values_[i]) + ")");
  }
  if (values_.empty() || values_.size() % kHoursPerDay != 0)
    throw GapError("series length " + std::to_string(values_.size()) + " is not a whole number of days");
}

HourlySeries load_series(const std::filesystem::path& path, SeriesKind kind) {
  std::ifstream in(path);
  if (!in) throw MissingFile("cannot open " + path.string());

  std::vector<double> values;
  std::optional<std::int64_t> previous;
  bool header_seen = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      constexpr std::string_view kUnits = "units:";
      auto body = trim(text.substr(1));
      if (body.starts_with(kUnits)) {
        const auto units = trim(body.substr(kUnits.size()));
        if (units != units_of(kind))
          throw SchemaError(where(path, lineno) + "units '" + std::string(units) + "' but expected '" +
                            units_of(kind) + "'");
      }
      continue;
    }
    if (!header_seen) {
      if (text != "timestamp,value")
        throw SchemaError(where(path, lineno) + "expected header 'timestamp,value', got '" + std::string(text) + "'");
      header_seen = true;
      continue;
    }

    const auto comma = text.find(',');
    if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos)
      throw SchemaError(where(path, lineno) + "expected two columns");
    const auto stamp_text = trim(text.substr(0, comma));
    const auto value_text = trim(text.substr(comma + 1));

    const auto stamp = parse_hour_stamp(stamp_text);
    if (!stamp) throw SchemaError(where(path, lineno) + "bad timestamp '" + std::string(stamp_text) + "'");
    double value = 0.0;
    {
      auto first = value_text.data();
      if (!value_text.empty() && value_text.front() == '+') ++first;
      auto [ptr, ec] = std::from_chars(first, value_text.data() + value_text.size(), value);
      if (value_text.empty() || ec != std::errc{} || ptr != value_text.data() + value_text.size() ||
          !std::isfinite(value))
        throw SchemaError(where(path, lineno) + "bad value '" + std::string(value_text) + "'");
    }
    if (value < 0.0) throw NegativeValue(where(path, lineno) + "negative value " + std::string(value_text));
    if (previous && *stamp != *previous + 1)
      throw GapError(where(path, lineno) + "timestamp " + std::string(stamp_text) +
                     " does not follow the previous row by one hour");
    previous = stamp;
    values.push_back(value);
  }
  if (!header_seen) throw SchemaError(path.string() + ": missing 'timestamp,value' header");
  if (values.empty()) throw SchemaError(path.string() + ": no data rows");
  if (values.size() % kHoursPerDay != 0)
    throw GapError(path.string() + ": " + std::to_string(values.size()) + " rows is not a whole number of days");
  return HourlySeries(std::move(values));
}

void write_series(const std::filesystem::path& path, const HourlySeries& series, SeriesKind kind,
                  const std::string& first_timestamp) {
  const auto start = parse_hour_stamp(first_timestamp);
  if (!start) throw SchemaError("bad start timestamp '" + first_timestamp + "'");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw MissingFile("cannot write " + path.string());
  out << "# units: " << units_of(kind) << '\n' << "timestamp,value\n";
  for (std::size_t i = 0; i < series.hours(); ++i)
    out << format_hour_stamp(*start + static_cast<std::int64_t>(i)) << ',' << format_value(series[i]) << '\n';
  if (!out) throw DataError("write failed for " + path.string());
}

AlignedYear align(HourlySeries demand, HourlySeries irradiance) {
  if (demand.hours() != irradiance.hours())
    throw LengthMismatch("demand has " + std::to_string(demand.hours()) + " hours but irradiance has " +
                         std::to_string(irradiance.hours()));
  return AlignedYear{std::move(demand), std::move(irradiance)};
}

AlignedYear synthetic_year(double peak_demand_kw, double peak_irradiance_w_m2, std::size_t hours,
                           std::uint64_t seed) {
  if (!(peak_demand_kw > 0.0) || !(peak_irradiance_w_m2 > 0.0))
    throw std::invalid_argument("synthetic_year: peaks must be positive");
  if (hours == 0 || hours % kHoursPerDay != 0)
    throw std::invalid_argument("synthetic_year: hours must be a positive multiple of 24");

  constexpr double kPi = std::numbers::pi;
  constexpr double kSunrise = 6.0;
  constexpr double kDaylight = 12.0;

  std::vector<double> demand(hours);
  std::vector<double> irradiance(hours);
  const std::size_t days = hours / kHoursPerDay;
  for (std::size_t day = 0; day < days; ++day) {
    SplitMix64 rng(seed, day);
    // Summer peak around day 172; clouds scale a day's irradiance into [0.35, 1].
    const double season = 0.8 + 0.2 * std::cos(2.0 * kPi * (static_cast<double>(day) - 172.0) / 365.0);
    const double clouds = 0.35 + 0.65 * std::sqrt(rng.uniform());
    for (std::size_t h = 0; h < kHoursPerDay; ++h) {
      const std::size_t i = day * kHoursPerDay + h;
      const double mid = static_cast<double>(h) + 0.5;
      double sun = 0.0;
      if (mid > kSunrise && mid < kSunrise + kDaylight) sun = std::sin(kPi * (mid - kSunrise) / kDaylight);
      irradiance[i] = peak_irradiance_w_m2 * season * clouds * sun;

      // Base 65% of peak, daytime bump up to 30%, +-5% noise.
      const double bump = (mid > 7.0 && mid < 21.0) ? std::sin(kPi * (mid - 7.0) / 14.0) : 0.0;
      const double noise = 0.05 * (2.0 * rng.uniform() - 1.0);
      demand[i] = peak_demand_kw * std::min(1.0, 0.65 + 0.30 * bump + noise);
    }
  }
  return AlignedYear{HourlySeries(std::move(demand)), HourlySeries(std::move(irradiance))};
}

}  // namespace pvsizing
