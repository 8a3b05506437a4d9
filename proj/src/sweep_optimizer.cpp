#include "pvsizing/sweep_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pvsizing {

void SweepScenario::validate() const {
  pv.validate();
  outage.validate();
  econ.validate();
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ModelError("alpha must lie on [0, 1]");
  if (!(beta >= 0.0 && beta <= 1.0)) throw ModelError("beta must lie on [0, 1]");
  if (!(dt_h > 0.0)) throw ModelError("time step must be positive");
}

bool meets_chance_constraint(double ccp, double alpha) noexcept { return ccp >= 1.0 - alpha; }

const std::vector<BatterySpec>& battery_catalog() {
  static const std::vector<BatterySpec> catalog{
      {"lead-acid", 75.0, 0.86, 0.55},
      {"sodium-sulphur", 165.0, 0.86, 1.00},
      {"vanadium-redox", 120.0, 0.78, 1.00},
      {"lithium-ion", 224.0, 0.97, 0.90},
  };
  return catalog;
}

const BatterySpec& catalog_battery(std::string_view name) {
  for (const auto& spec : battery_catalog())
    if (spec.name == name) return spec;
  throw ModelError("unknown battery '" + std::string(name) +
                   "' (expected lead-acid|sodium-sulphur|vanadium-redox|lithium-ion)");
}

std::vector<double> capacity_grid(double min_kwh, double max_kwh, double step_kwh) {
  if (!(min_kwh >= 0.0) || !(max_kwh >= min_kwh) || !(step_kwh > 0.0))
    throw ModelError("capacity grid needs 0 <= min <= max and step > 0");
  const auto count = static_cast<std::size_t>(std::floor((max_kwh - min_kwh) / step_kwh + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = min_kwh + static_cast<double>(i) * step_kwh;
  return grid;
}

SweepRow evaluate_capacity(const AlignedYear& year, const BatterySpec& spec, const SweepScenario& scenario,
                           double capacity_br, std::size_t n_samples, std::uint64_t seed) {
  MonteCarloOptions mc;
  mc.n_samples = n_samples;
  mc.seed = seed;
  mc.beta = scenario.beta;
  mc.dt_h = scenario.dt_h;
  mc.mode = scenario.mode;
  mc.duration_model = scenario.duration_model;
  mc.threads = scenario.threads;
  const auto summary = run_monte_carlo(year, spec, capacity_br, scenario.pv, scenario.outage, mc);

  SweepRow row;
  row.battery = spec.name;
  row.capacity_br = capacity_br;
  row.ccp = summary.ccp.ccp;
  row.ccp_std_error = summary.ccp.std_error;
  row.mean_lolp = summary.mean_lolp;
  row.mean_lost_energy = summary.mean_lost_energy;
  row.cost = total_system_cost(capacity_br, spec,
                               expected_annual_penalty(summary.mean_lost_energy, scenario.outage, scenario.econ),
                               scenario.econ);
  row.feasible = meets_chance_constraint(row.ccp, scenario.alpha);
  return row;
}

std::vector<SweepRow> sweep(const AlignedYear& year, const BatterySpec& spec, const SweepScenario& scenario,
                            std::span<const double> capacities, std::size_t n_samples, std::uint64_t seed) {
  if (capacities.empty()) throw ModelError("capacity grid is empty");
  if (!std::is_sorted(capacities.begin(), capacities.end(), std::less_equal<>{}))
    throw ModelError("capacity grid must be strictly increasing");
  scenario.validate();
  spec.validate();

  std::vector<SweepRow> rows;
  rows.reserve(capacities.size());
  for (double c : capacities) rows.push_back(evaluate_capacity(year, spec, scenario, c, n_samples, seed));
  return rows;
}

Selection select_optimal(std::span<const SweepRow> rows, double alpha) {
  if (rows.empty()) throw EmptySweep("cannot select from an empty sweep");

  Selection sel;
  const SweepRow* best_ccp = nullptr;
  const SweepRow* best = nullptr;
  for (const auto& r : rows) {
    if (!best_ccp || r.ccp > best_ccp->ccp || (r.ccp == best_ccp->ccp && r.capacity_br < best_ccp->capacity_br))
      best_ccp = &r;
    if (!meets_chance_constraint(r.ccp, alpha)) continue;
    if (!best || r.cost.tsc < best->cost.tsc || (r.cost.tsc == best->cost.tsc && r.capacity_br < best->capacity_br))
      best = &r;
  }
  sel.best_ccp = *best_ccp;
  if (best) sel.optimum = *best;
  return sel;
}

std::vector<SweepRow> compare_batteries(const AlignedYear& year, std::span<const BatterySpec> catalog,
                                        const SweepScenario& scenario, std::span<const double> capacities,
                                        std::size_t n_samples, std::uint64_t seed) {
  std::vector<SweepRow> table;
  table.reserve(catalog.size() * capacities.size());
  for (const auto& spec : catalog) {
    auto rows = sweep(year, spec, scenario, capacities, n_samples, seed);
    std::move(rows.begin(), rows.end(), std::back_inserter(table));
  }
  return table;
}

}  // namespace pvsizing
