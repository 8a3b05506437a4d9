#include "pvsizing/economics.hpp"

#include <cmath>

namespace pvsizing {

void EconConfig::validate() const {
  if (!(voll >= 0.0) || !std::isfinite(voll)) throw ModelError("VOLL must be >= 0");
  if (horizon_years < 1) throw ModelError("planning horizon must be at least one year");
  if (!(discount_rate >= 0.0) || !std::isfinite(discount_rate)) throw ModelError("discount rate must be >= 0");
}

double annuity_factor(double rate, int years) {
  if (!(rate >= 0.0)) throw ModelError("discount rate must be >= 0");
  if (years < 0) throw ModelError("horizon must be >= 0 years");
  if (rate == 0.0) return static_cast<double>(years);
  return -std::expm1(-years * std::log1p(rate)) / rate;
}

double expected_annual_penalty(double mean_lost_energy_per_outage, const OutageStats& stats, const EconConfig& econ) {
  if (!(mean_lost_energy_per_outage >= 0.0)) throw ModelError("mean lost energy must be >= 0");
  if (!(stats.saifi_per_year >= 0.0)) throw ModelError("SAIFI must be >= 0");
  if (!(econ.voll >= 0.0)) throw ModelError("VOLL must be >= 0");
  return stats.saifi_per_year * mean_lost_energy_per_outage * econ.voll;
}

CostBreakdown total_system_cost(double capacity_br, const BatterySpec& spec, double annual_penalty,
                                const EconConfig& econ) {
  if (!(capacity_br >= 0.0)) throw ModelError("battery capacity must be >= 0");
  if (!(spec.unit_cost_b >= 0.0)) throw ModelError("battery unit cost must be >= 0");
  if (!(annual_penalty >= 0.0)) throw ModelError("annual penalty must be >= 0");
  CostBreakdown c;
  c.capital = capacity_br * spec.unit_cost_b;
  c.npv_penalty = annual_penalty * annuity_factor(econ.discount_rate, econ.horizon_years);
  c.tsc = c.capital + c.npv_penalty;
  return c;
}

}  // namespace pvsizing
