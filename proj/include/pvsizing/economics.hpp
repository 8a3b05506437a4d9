#pragma once

// Total system cost: battery capital at year 0 plus the present value of the
// expected annual lost-load penalty over the planning horizon.

#include "pvsizing/core_model.hpp"
#include "pvsizing/outage_engine.hpp"

namespace pvsizing {

struct EconConfig {
  double voll = 0.0;  // $/kWh of unserved load
  int horizon_years = 20;
  double discount_rate = 0.04;

  void validate() const;
};

struct CostBreakdown {
  double capital = 0.0;
  double npv_penalty = 0.0;
  double tsc = 0.0;  // capital + npv_penalty
};

/// Present value of 1 $/yr paid at the end of years 1..years.
double annuity_factor(double rate, int years);

/// SAIFI x mean lost energy per outage x VOLL, in $/yr.
double expected_annual_penalty(double mean_lost_energy_per_outage, const OutageStats& stats, const EconConfig& econ);

CostBreakdown total_system_cost(double capacity_br, const BatterySpec& spec, double annual_penalty,
                                const EconConfig& econ);

}  // namespace pvsizing
