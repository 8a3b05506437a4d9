#include "pvsizing/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pvsizing {

namespace {

// Slack on the depletion test so that a deficit sequence whose total withdrawal
// lands exactly on the floor is still served despite rounding in the running sum.
constexpr double kFloorSlackRel = 1e-10;

bool in_unit_interval_open_left(double x) { return x > 0.0 && x <= 1.0; }

[[noreturn]] void fail(const std::string& what, double value) {
  std::ostringstream os;
  os << what << " (got " << value << ")";
  throw ModelError(os.str());
}

}  // namespace

void BatterySpec::validate() const {
  if (!in_unit_interval_open_left(efficiency_e)) fail("battery efficiency must lie in (0, 1]", efficiency_e);
  if (!in_unit_interval_open_left(dod)) fail("battery depth of discharge must lie in (0, 1]", dod);
  if (!(unit_cost_b >= 0.0) || !std::isfinite(unit_cost_b)) fail("battery unit cost must be >= 0", unit_cost_b);
}

void PvConfig::validate() const {
  if (!in_unit_interval_open_left(conversion_efficiency_eta))
    fail("PV conversion efficiency must lie in (0, 1]", conversion_efficiency_eta);
  if (!(array_area_a > 0.0) || !std::isfinite(array_area_a)) fail("PV array area must be positive", array_area_a);
}

EfficiencyMode parse_efficiency_mode(std::string_view text) {
  if (text == "asymmetric") return EfficiencyMode::kAsymmetric;
  if (text == "literal") return EfficiencyMode::kLiteral;
  throw ModelError("unknown efficiency mode '" + std::string(text) + "' (expected asymmetric|literal)");
}

std::string_view to_string(EfficiencyMode mode) {
  switch (mode) {
    case EfficiencyMode::kAsymmetric:
      return "asymmetric";
    case EfficiencyMode::kLiteral:
      return "literal";
  }
  throw ModelError("unknown efficiency mode");
}

double usable_floor(double capacity_br, double dod) {
  if (!(capacity_br >= 0.0) || !std::isfinite(capacity_br)) fail("battery capacity must be >= 0", capacity_br);
  if (!in_unit_interval_open_left(dod)) fail("battery depth of discharge must lie in (0, 1]", dod);
  // B_r (1 - DoD), written so that 1000 x 0.55 gives exactly 450.
  return capacity_br - capacity_br * dod;
}

BatteryState::BatteryState(double capacity_br, double dod, double stored_qb)
    : capacity_br_(capacity_br), floor_bmin_(usable_floor(capacity_br, dod)), stored_qb_(stored_qb) {
  validate();
}

void BatteryState::validate() const {
  if (!(capacity_br_ >= 0.0) || !std::isfinite(capacity_br_)) fail("battery capacity must be >= 0", capacity_br_);
  if (!(floor_bmin_ >= 0.0 && floor_bmin_ <= capacity_br_)) fail("battery floor must lie on [0, capacity]", floor_bmin_);
  if (!(stored_qb_ >= floor_bmin_ && stored_qb_ <= capacity_br_))
    fail("stored energy must lie on [floor, capacity]", stored_qb_);
}

double pv_power(double irradiance_w_m2, const PvConfig& pv) {
  if (!(irradiance_w_m2 >= 0.0)) fail("irradiance must be >= 0", irradiance_w_m2);
  return pv.conversion_efficiency_eta * irradiance_w_m2 * pv.array_area_a / 1000.0;
}

StepOutcome step_battery(const BatteryState& state, double p_kw, double d_kw, const BatterySpec& spec, double dt_h,
                         EfficiencyMode mode) {
  state.validate();
  spec.validate();
  if (state.floor_bmin() != usable_floor(state.capacity_br(), spec.dod))
    fail("battery state floor does not match the spec's depth of discharge", state.floor_bmin());
  if (!(p_kw >= 0.0)) fail("PV power must be >= 0", p_kw);
  if (!(d_kw >= 0.0)) fail("demand must be >= 0", d_kw);
  if (!(dt_h > 0.0)) fail("time step must be positive", dt_h);
  if (mode != EfficiencyMode::kAsymmetric && mode != EfficiencyMode::kLiteral) throw ModelError("unknown efficiency mode");

  const double cap = state.capacity_br();
  const double floor = state.floor_bmin();
  const double q = state.stored_qb();
  const double e = spec.efficiency_e;

  StepOutcome out;
  out.new_state = state;

  // Charging from PV, clipped at capacity; the overflow is curtailed.
  auto charge = [&](double energy_in) {
    const double raw = q + energy_in;
    if (raw > cap) {
      out.curtailed = raw - cap;
      return cap;
    }
    return raw;
  };

  double q_next = q;
  if (p_kw >= d_kw) {
    q_next = charge((p_kw - d_kw) * e * dt_h);
  } else {
    const double deficit = (d_kw - p_kw) * dt_h;
    const double withdrawal = mode == EfficiencyMode::kAsymmetric ? deficit / e : deficit * e;
    const double after = q - withdrawal;
    if (after >= floor - kFloorSlackRel * std::max(1.0, cap)) {
      q_next = std::max(after, floor);
    } else {
      out.served = false;
      out.energy_lost_ael = d_kw * dt_h;
      q_next = charge(p_kw * e * dt_h);
    }
  }

  out.new_state = BatteryState(cap, spec.dod, q_next);
  return out;
}

}  // namespace pvsizing
