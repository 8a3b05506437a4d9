#pragma once

// Hourly demand / irradiance series: CSV loading, validation, alignment and a
// deterministic synthetic year.
//
// CSV layout:
//   # units: kW            (or "# units: W/m2"; optional comment lines)
//   timestamp,value
//   2019-01-01T00:00,812.5
//   ...
// Timestamps are ISO-8601 at hour resolution and must advance by exactly one
// hour per row. The row count must be a whole number of days.

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pvsizing {

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class MissingFile : public DataError {
 public:
  using DataError::DataError;
};
class SchemaError : public DataError {
 public:
  using DataError::DataError;
};
class GapError : public DataError {
 public:
  using DataError::DataError;
};
class NegativeValue : public DataError {
 public:
  using DataError::DataError;
};
class LengthMismatch : public DataError {
 public:
  using DataError::DataError;
};

enum class SeriesKind { kDemand, kIrradiance };

/// "kW" for demand, "W/m2" for irradiance.
const char* units_of(SeriesKind kind);

/// Non-negative hourly values covering whole days.
class HourlySeries {
 public:
  HourlySeries() = default;
  /// Throws NegativeValue / GapError on invalid input.
  explicit HourlySeries(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t hours() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  bool operator==(const HourlySeries&) const = default;

 private:
  std::vector<double> values_;
};

struct AlignedYear {
  HourlySeries demand;      // kW
  HourlySeries irradiance;  // W/m^2

  std::size_t hours() const noexcept { return demand.hours(); }
};

HourlySeries load_series(const std::filesystem::path& path, SeriesKind kind);

/// Writes the CSV layout above, starting at `first_timestamp` (an hour-resolution
/// ISO-8601 stamp).
void write_series(const std::filesystem::path& path, const HourlySeries& series, SeriesKind kind,
                  const std::string& first_timestamp = "2019-01-01T00:00");

AlignedYear align(HourlySeries demand, HourlySeries irradiance);

/// Deterministic stand-in for a measured year: clear-sky diurnal irradiance
/// with seeded day-to-day cloudiness (zero between 18:00 and 06:00), and a
/// hospital-like demand with a high flat base plus a daytime bump.
AlignedYear synthetic_year(double peak_demand_kw, double peak_irradiance_w_m2, std::size_t hours = 8760,
                           std::uint64_t seed = 42);

}  // namespace pvsizing
