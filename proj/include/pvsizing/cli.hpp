#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pvsizing/sweep_optimizer.hpp"

namespace pvsizing {

/// Process exit codes.
enum ExitCode : int { kExitOk = 0, kExitRuntime = 1, kExitConfig = 2 };

/// Column order: battery, capacity_kwh, ccp, ccp_se, mean_lolp,
/// mean_lost_energy_kwh, capital, npv_penalty, tsc, feasible.
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

/// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

/// Entry point for `pvsizing simulate|sweep|compare`. `args` excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pvsizing
