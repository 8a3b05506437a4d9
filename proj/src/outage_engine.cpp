#include "pvsizing/outage_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "pvsizing/random.hpp"

namespace pvsizing {

void OutageStats::validate() const {
  if (!(caidi_hours > 0.0) || !std::isfinite(caidi_hours)) throw ModelError("CAIDI must be positive");
  if (!(saifi_per_year > 0.0) || !std::isfinite(saifi_per_year)) throw ModelError("SAIFI must be positive");
}

DurationModel parse_duration_model(std::string_view text) {
  if (text == "exponential") return DurationModel::kExponential;
  if (text == "fixed") return DurationModel::kFixed;
  throw ModelError("unknown duration model '" + std::string(text) + "' (expected exponential|fixed)");
}

std::string_view to_string(DurationModel model) {
  return model == DurationModel::kExponential ? "exponential" : "fixed";
}

UniformDraws draws_for_sample(std::uint64_t seed, std::uint64_t index) noexcept {
  SplitMix64 rng(seed, index);
  UniformDraws d;
  d.start = rng.uniform();
  d.duration = rng.uniform();
  d.soc = rng.uniform();
  return d;
}

double sample_initial_soc(double u, double capacity_br, double floor_bmin) {
  if (!(u >= 0.0 && u <= 1.0)) throw ModelError("initial charge fraction must lie on [0, 1] (got " + std::to_string(u) + ")");
  if (!(floor_bmin >= 0.0 && floor_bmin <= capacity_br)) throw ModelError("battery floor must lie on [0, capacity]");
  const double q = (1.0 - u) * floor_bmin + u * capacity_br;
  return std::clamp(q, floor_bmin, capacity_br);
}

OutageSample sample_outage(const UniformDraws& draws, const OutageStats& stats, std::size_t year_hours, double dt_h,
                           DurationModel model) {
  if (year_hours == 0) throw ModelError("year must contain at least one hour");
  if (!(dt_h > 0.0)) throw ModelError("time step must be positive");
  stats.validate();
  for (double u : {draws.start, draws.duration, draws.soc})
    if (!(u >= 0.0 && u <= 1.0)) throw ModelError("uniform draws must lie on [0, 1]");

  OutageSample s;
  s.start_hour = std::min(static_cast<std::size_t>(std::floor(draws.start * static_cast<double>(year_hours))),
                          year_hours - 1);
  const double hours = model == DurationModel::kExponential ? -stats.caidi_hours * std::log1p(-draws.duration)
                                                            : stats.caidi_hours;
  const double steps = std::ceil(hours / dt_h);
  s.duration_steps = std::isfinite(steps) ? std::max<std::size_t>(1, static_cast<std::size_t>(steps)) : 1;
  s.initial_soc_fraction_u = draws.soc;
  return s;
}

OutageResult simulate_outage(const OutageSample& sample, const AlignedYear& year, const BatterySpec& spec,
                             double capacity_br, const PvConfig& pv, double dt_h, EfficiencyMode mode,
                             bool keep_trace) {
  const std::size_t n = year.hours();
  if (n == 0 || sample.start_hour >= n) throw ModelError("outage start lies outside the year");
  if (sample.duration_steps < 1) throw ModelError("outage must last at least one step");
  spec.validate();

  const double floor = usable_floor(capacity_br, spec.dod);
  BatteryState state(capacity_br, spec.dod, sample_initial_soc(sample.initial_soc_fraction_u, capacity_br, floor));

  OutageResult r;
  r.duration_steps = sample.duration_steps;
  if (keep_trace) r.trace.reserve(sample.duration_steps);
  for (std::size_t k = 0; k < sample.duration_steps; ++k) {
    const std::size_t t = (sample.start_hour + k) % n;
    const StepOutcome step = step_battery(state, pv_power(year.irradiance[t], pv), year.demand[t], spec, dt_h, mode);
    if (step.served) ++r.served_steps;
    r.lost_energy += step.energy_lost_ael;
    state = step.new_state;
    if (keep_trace) r.trace.push_back(step);
  }
  r.lolp = static_cast<double>(r.duration_steps - r.served_steps) / static_cast<double>(r.duration_steps);
  return r;
}

CcpEstimate estimate_ccp(std::span<const double> lolps, double beta) {
  if (lolps.empty()) throw EmptyResults("cannot estimate CCP from zero outages");
  if (!(beta >= 0.0 && beta <= 1.0)) throw ModelError("beta must lie on [0, 1]");
  const auto ok = std::count_if(lolps.begin(), lolps.end(), [beta](double l) { return l <= beta; });
  CcpEstimate est;
  est.samples = lolps.size();
  est.ccp = static_cast<double>(ok) / static_cast<double>(est.samples);
  est.std_error = std::sqrt(est.ccp * (1.0 - est.ccp) / static_cast<double>(est.samples));
  return est;
}

CcpEstimate estimate_ccp(std::span<const OutageResult> results, double beta) {
  std::vector<double> lolps;
  lolps.reserve(results.size());
  for (const auto& r : results) lolps.push_back(r.lolp);
  return estimate_ccp(lolps, beta);
}

MonteCarloSummary run_monte_carlo(const AlignedYear& year, const BatterySpec& spec, double capacity_br,
                                  const PvConfig& pv, const OutageStats& stats, const MonteCarloOptions& options) {
  if (options.n_samples < 1) throw ModelError("Monte Carlo needs at least one sample");
  spec.validate();
  pv.validate();
  stats.validate();
  usable_floor(capacity_br, spec.dod);

  const std::size_t n = options.n_samples;
  std::vector<double> lolp(n);
  std::vector<double> lost(n);

  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto sample = sample_outage(draws_for_sample(options.seed, i), stats, year.hours(), options.dt_h,
                                        options.duration_model);
      const auto r = simulate_outage(sample, year, spec, capacity_br, pv, options.dt_h, options.mode);
      lolp[i] = r.lolp;
      lost[i] = r.lost_energy;
    }
  };

  unsigned workers = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    run_range(0, n);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      const std::size_t chunk = (n + workers - 1) / workers;
      for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = std::min(n, w * chunk);
        const std::size_t end = std::min(n, begin + chunk);
        pool.emplace_back([&, w, begin, end] {
          try {
            run_range(begin, end);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  // Reduce in sample order so the sums do not depend on the worker split.
  MonteCarloSummary out;
  out.ccp = estimate_ccp(lolp, options.beta);
  double lolp_sum = 0.0;
  double lost_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    lolp_sum += lolp[i];
    lost_sum += lost[i];
  }
  out.mean_lolp = lolp_sum / static_cast<double>(n);
  out.mean_lost_energy = lost_sum / static_cast<double>(n);
  return out;
}

}  // namespace pvsizing
