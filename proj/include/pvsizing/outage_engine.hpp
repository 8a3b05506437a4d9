#pragma once

// Monte Carlo estimation of loss-of-load probability during grid outages.
//
// Each outage draws a start hour uniformly over the year, a duration from the
// CAIDI statistic, and an initial state of charge uniform on [B_min, B_r]. The
// battery is then stepped hour by hour through the outage window.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "pvsizing/core_model.hpp"
#include "pvsizing/data_ingest.hpp"

namespace pvsizing {

struct OutageStats {
  double caidi_hours = 7.83;     // mean interruption duration
  double saifi_per_year = 0.84;  // interruptions per year

  void validate() const;
};

/// kExponential: duration ~ Exp(mean = CAIDI). kFixed: every outage lasts CAIDI.
enum class DurationModel { kExponential, kFixed };

DurationModel parse_duration_model(std::string_view text);
std::string_view to_string(DurationModel model);

struct UniformDraws {
  double start = 0.0;
  double duration = 0.0;
  double soc = 0.0;
};

/// The three draws of Monte Carlo sample `index` under `seed`. Sample i sees the
/// same draws for every capacity and chemistry (common random numbers).
UniformDraws draws_for_sample(std::uint64_t seed, std::uint64_t index) noexcept;

struct OutageSample {
  std::size_t start_hour = 0;
  std::size_t duration_steps = 1;
  double initial_soc_fraction_u = 1.0;
};

struct OutageResult {
  double lolp = 0.0;
  double lost_energy = 0.0;  // kWh
  std::size_t served_steps = 0;
  std::size_t duration_steps = 0;
  std::vector<StepOutcome> trace;  // filled only on request
};

struct CcpEstimate {
  double ccp = 0.0;
  std::size_t samples = 0;
  double std_error = 0.0;
};

class EmptyResults : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Inverse CDF of the uniform initial charge on [B_min, B_r]; u = 0 and u = 1
/// return the endpoints exactly.
double sample_initial_soc(double u, double capacity_br, double floor_bmin);

OutageSample sample_outage(const UniformDraws& draws, const OutageStats& stats, std::size_t year_hours,
                           double dt_h = 1.0, DurationModel model = DurationModel::kExponential);

/// Steps the battery through the outage window, wrapping past the end of the year.
OutageResult simulate_outage(const OutageSample& sample, const AlignedYear& year, const BatterySpec& spec,
                             double capacity_br, const PvConfig& pv, double dt_h = 1.0,
                             EfficiencyMode mode = EfficiencyMode::kAsymmetric, bool keep_trace = false);

/// Fraction of outages with lolp <= beta, with its binomial standard error.
CcpEstimate estimate_ccp(std::span<const OutageResult> results, double beta);
CcpEstimate estimate_ccp(std::span<const double> lolps, double beta);

struct MonteCarloOptions {
  std::size_t n_samples = 10000;
  std::uint64_t seed = 42;
  double beta = 0.10;
  double dt_h = 1.0;
  EfficiencyMode mode = EfficiencyMode::kAsymmetric;
  DurationModel duration_model = DurationModel::kExponential;
  unsigned threads = 1;  // 0 selects std::thread::hardware_concurrency()
};

struct MonteCarloSummary {
  CcpEstimate ccp;
  double mean_lolp = 0.0;
  double mean_lost_energy = 0.0;  // kWh per outage
};

/// Output is bit-identical for any thread count.
MonteCarloSummary run_monte_carlo(const AlignedYear& year, const BatterySpec& spec, double capacity_br,
                                  const PvConfig& pv, const OutageStats& stats, const MonteCarloOptions& options);

}  // namespace pvsizing
