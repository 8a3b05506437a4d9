#pragma once

// Physical model for a fixed PV array feeding a battery during a grid outage:
// battery/PV parameter types and the single-step state transition.

#include <stdexcept>
#include <string>
#include <string_view>

namespace pvsizing {

/// Raised when a model input violates its documented range.
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Battery chemistry parameters. Cost is $/kWh of nominal capacity; efficiency
/// and depth of discharge are fractions in (0, 1].
struct BatterySpec {
  std::string name;
  double unit_cost_b = 0.0;
  double efficiency_e = 1.0;
  double dod = 1.0;

  void validate() const;
};

struct PvConfig {
  double conversion_efficiency_eta = 0.16;
  double array_area_a = 0.0;  // m^2

  void validate() const;
};

/// How round-trip efficiency applies to discharge.
///  - kAsymmetric: charge multiplies by e, discharge withdraws deficit / e.
///  - kLiteral: the net flow is multiplied by e in both directions.
enum class EfficiencyMode { kAsymmetric, kLiteral };

EfficiencyMode parse_efficiency_mode(std::string_view text);
std::string_view to_string(EfficiencyMode mode);

/// Battery energy state in kWh. Invariant: floor_bmin <= stored_qb <= capacity_br.
class BatteryState {
 public:
  BatteryState() = default;
  /// Throws ModelError unless the stored energy lies on [B_min, B_r].
  BatteryState(double capacity_br, double dod, double stored_qb);

  double capacity_br() const noexcept { return capacity_br_; }
  double floor_bmin() const noexcept { return floor_bmin_; }
  double stored_qb() const noexcept { return stored_qb_; }

  /// Energy above the floor.
  double usable() const noexcept { return stored_qb_ - floor_bmin_; }

  void validate() const;

 private:
  double capacity_br_ = 0.0;
  double floor_bmin_ = 0.0;
  double stored_qb_ = 0.0;
};

struct StepOutcome {
  BatteryState new_state;
  double energy_lost_ael = 0.0;  // kWh, either 0 or the full step demand
  double curtailed = 0.0;        // kWh of PV discarded at the capacity cap
  bool served = true;
};

/// Energy floor B_min = B_r (1 - DoD).
double usable_floor(double capacity_br, double dod);

/// PV output in kW for irradiance in W/m^2.
double pv_power(double irradiance_w_m2, const PvConfig& pv);

/// Advances the battery by one step of dt_h hours with PV output p_kw and
/// demand d_kw. A deficit that would take the battery below its floor sheds
/// the whole step's load; the battery then only charges from PV.
StepOutcome step_battery(const BatteryState& state, double p_kw, double d_kw,
                         const BatterySpec& spec, double dt_h,
                         EfficiencyMode mode = EfficiencyMode::kAsymmetric);

}  // namespace pvsizing
