#pragma once

// Scenario files: flat "section.key = value" text, '#' starts a comment.
// See docs/scenario_format.md for the full key list.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "pvsizing/sweep_optimizer.hpp"

namespace pvsizing {

/// A configuration problem tied to one key (e.g. "economics.voll").
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct SyntheticData {
  double peak_demand_kw = 0.0;
  double peak_irradiance_w_m2 = 1000.0;
  std::size_t hours = 8760;
  std::uint64_t seed = 42;
};

struct DataSource {
  std::optional<std::filesystem::path> demand_csv;
  std::optional<std::filesystem::path> irradiance_csv;
  std::optional<SyntheticData> synthetic;
};

struct ScenarioFile {
  SweepScenario scenario;
  std::optional<BatterySpec> battery;  // required by simulate and sweep
  std::optional<double> capacity_kwh;  // required by simulate
  std::size_t n_samples = 10000;
  std::uint64_t seed = 42;
  DataSource data;
  double sweep_min_kwh = 200.0;
  double sweep_max_kwh = 20000.0;
  double sweep_step_kwh = 200.0;

  std::vector<double> grid() const { return capacity_grid(sweep_min_kwh, sweep_max_kwh, sweep_step_kwh); }
};

/// Relative CSV paths are resolved against `base_dir`.
ScenarioFile parse_scenario(std::istream& in, const std::filesystem::path& base_dir = {});
ScenarioFile load_scenario(const std::filesystem::path& path);

AlignedYear load_year(const DataSource& data);

}  // namespace pvsizing
