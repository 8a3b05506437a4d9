#pragma once

// Capacity sweeps, chance-constrained selection, and chemistry comparison.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pvsizing/economics.hpp"
#include "pvsizing/outage_engine.hpp"

namespace pvsizing {

/// Everything except the battery, the capacity and the sample budget.
struct SweepScenario {
  PvConfig pv;
  OutageStats outage;
  double alpha = 0.05;  // allowed chance-constraint violation
  double beta = 0.10;   // LOLP limit per outage
  EconConfig econ;
  double dt_h = 1.0;
  EfficiencyMode mode = EfficiencyMode::kAsymmetric;
  DurationModel duration_model = DurationModel::kExponential;
  unsigned threads = 1;

  void validate() const;
};

struct SweepRow {
  std::string battery;
  double capacity_br = 0.0;
  double ccp = 0.0;
  double ccp_std_error = 0.0;
  double mean_lolp = 0.0;
  double mean_lost_energy = 0.0;
  CostBreakdown cost;
  bool feasible = false;
};

/// ccp >= 1 - alpha.
bool meets_chance_constraint(double ccp, double alpha) noexcept;

/// The 2030 central estimates: lead-acid, sodium-sulphur, vanadium-redox, lithium-ion.
const std::vector<BatterySpec>& battery_catalog();

/// Throws ModelError for names outside the catalog.
const BatterySpec& catalog_battery(std::string_view name);

/// min, min + step, ... up to max inclusive.
std::vector<double> capacity_grid(double min_kwh, double max_kwh, double step_kwh);

SweepRow evaluate_capacity(const AlignedYear& year, const BatterySpec& spec, const SweepScenario& scenario,
                           double capacity_br, std::size_t n_samples, std::uint64_t seed);

/// One row per capacity; every row reuses the same seed.
std::vector<SweepRow> sweep(const AlignedYear& year, const BatterySpec& spec, const SweepScenario& scenario,
                            std::span<const double> capacities, std::size_t n_samples, std::uint64_t seed);

class EmptySweep : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Selection {
  std::optional<SweepRow> optimum;  // cheapest feasible row
  SweepRow best_ccp;                // highest-CCP row, reported when nothing is feasible

  bool feasible() const noexcept { return optimum.has_value(); }
};

/// Cheapest row with ccp >= 1 - alpha, ties to the smaller capacity.
Selection select_optimal(std::span<const SweepRow> rows, double alpha);

/// Sweeps each battery over the same grid and seed; rows are grouped by battery
/// in catalog order.
std::vector<SweepRow> compare_batteries(const AlignedYear& year, std::span<const BatterySpec> catalog,
                                        const SweepScenario& scenario, std::span<const double> capacities,
                                        std::size_t n_samples, std::uint64_t seed);

}  // namespace pvsizing
