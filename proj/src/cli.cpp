#include "pvsizing/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>

#include "pvsizing/scenario.hpp"

namespace pvsizing {

std::string format_number(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "battery,capacity_kwh,ccp,ccp_se,mean_lolp,mean_lost_energy_kwh,capital,npv_penalty,tsc,feasible\n";
  for (const auto& r : rows) {
    out << r.battery << ',' << format_number(r.capacity_br) << ',' << format_number(r.ccp) << ','
        << format_number(r.ccp_std_error) << ',' << format_number(r.mean_lolp) << ','
        << format_number(r.mean_lost_energy) << ',' << format_number(r.cost.capital) << ','
        << format_number(r.cost.npv_penalty) << ',' << format_number(r.cost.tsc) << ','
        << (r.feasible ? "true" : "false") << '\n';
  }
}

namespace {

struct CommonOptions {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<unsigned> threads;
};

void add_common(CLI::App& cmd, CommonOptions& opts, const std::string& out_help) {
  cmd.add_option("--config", opts.config, "Scenario file")->required();
  cmd.add_option("--out", opts.out, out_help);
  cmd.add_option("--seed", opts.seed, "Override simulation.seed");
  cmd.add_option("--samples", opts.samples, "Override simulation.n_samples")->check(CLI::PositiveNumber);
  cmd.add_option("--threads", opts.threads, "Worker threads, 0 = all cores (results do not depend on it)");
}

ScenarioFile load_with_overrides(const CommonOptions& opts) {
  ScenarioFile f = load_scenario(opts.config);
  if (opts.seed) f.seed = *opts.seed;
  if (opts.samples) f.n_samples = *opts.samples;
  if (opts.threads) f.scenario.threads = *opts.threads;
  return f;
}

const BatterySpec& require_battery(const ScenarioFile& f) {
  if (!f.battery) throw ConfigError("battery.name", "required field is missing");
  return *f.battery;
}

class OutputFile {
 public:
  explicit OutputFile(const std::string& path) {
    file_.open(path, std::ios::binary);
    if (!file_) throw std::runtime_error("cannot write " + path);
  }
  std::ostream& stream() { return file_; }
  void close(const std::string& path) {
    file_.close();
    if (!file_) throw std::runtime_error("write failed for " + path);
  }

 private:
  std::ofstream file_;
};

void summarize(std::ostream& err, std::span<const SweepRow> rows, double alpha) {
  const auto sel = select_optimal(rows, alpha);
  if (sel.optimum) {
    const auto& o = *sel.optimum;
    err << o.battery << ": optimum " << format_number(o.capacity_br) << " kWh, TSC " << std::fixed
        << std::setprecision(2) << o.cost.tsc << " $, CCP " << std::setprecision(4) << o.ccp << '\n';
  } else {
    const auto& b = sel.best_ccp;
    err << b.battery << ": infeasible, no capacity reaches CCP >= " << std::fixed << std::setprecision(4)
        << 1.0 - alpha << "; best CCP " << b.ccp << " at " << format_number(b.capacity_br) << " kWh\n";
  }
  err.unsetf(std::ios::floatfield);
  err << std::setprecision(6);
}

int cmd_simulate(const CommonOptions& opts, std::ostream& out) {
  const ScenarioFile f = load_with_overrides(opts);
  const BatterySpec& spec = require_battery(f);
  if (!f.capacity_kwh) throw ConfigError("battery.capacity_kwh", "required field is missing");
  const AlignedYear year = load_year(f.data);

  const SweepRow row = evaluate_capacity(year, spec, f.scenario, *f.capacity_kwh, f.n_samples, f.seed);

  out << "battery               " << row.battery << '\n'
      << "capacity_kwh          " << format_number(row.capacity_br) << '\n'
      << "ccp                   " << format_number(row.ccp) << " (se " << format_number(row.ccp_std_error) << ")\n"
      << "mean_lolp             " << format_number(row.mean_lolp) << '\n'
      << "mean_lost_energy_kwh  " << format_number(row.mean_lost_energy) << '\n'
      << "capital               " << format_number(row.cost.capital) << '\n'
      << "npv_penalty           " << format_number(row.cost.npv_penalty) << '\n'
      << "tsc                   " << format_number(row.cost.tsc) << '\n'
      << "feasible              " << (row.feasible ? "true" : "false") << '\n';

  if (!opts.out.empty()) {
    nlohmann::ordered_json j;
    j["battery"] = row.battery;
    j["capacity_kwh"] = row.capacity_br;
    j["ccp"] = row.ccp;
    j["ccp_se"] = row.ccp_std_error;
    j["mean_lolp"] = row.mean_lolp;
    j["mean_lost_energy_kwh"] = row.mean_lost_energy;
    j["capital"] = row.cost.capital;
    j["npv_penalty"] = row.cost.npv_penalty;
    j["tsc"] = row.cost.tsc;
    j["feasible"] = row.feasible;
    j["samples"] = f.n_samples;
    j["seed"] = f.seed;
    OutputFile file(opts.out);
    file.stream() << j.dump(2) << '\n';
    file.close(opts.out);
  }
  return kExitOk;
}

int emit_rows(const CommonOptions& opts, std::span<const SweepRow> rows, std::ostream& out) {
  if (opts.out.empty()) {
    write_sweep_csv(out, rows);
  } else {
    OutputFile file(opts.out);
    write_sweep_csv(file.stream(), rows);
    file.close(opts.out);
  }
  return kExitOk;
}

int cmd_sweep(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  const ScenarioFile f = load_with_overrides(opts);
  const BatterySpec& spec = require_battery(f);
  const auto grid = f.grid();
  const AlignedYear year = load_year(f.data);
  const auto rows = sweep(year, spec, f.scenario, grid, f.n_samples, f.seed);
  emit_rows(opts, rows, out);
  summarize(err, rows, f.scenario.alpha);
  return kExitOk;
}

int cmd_compare(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  const ScenarioFile f = load_with_overrides(opts);
  const auto grid = f.grid();
  const AlignedYear year = load_year(f.data);
  const auto& catalog = battery_catalog();
  const auto rows = compare_batteries(year, catalog, f.scenario, grid, f.n_samples, f.seed);
  emit_rows(opts, rows, out);
  for (std::size_t i = 0; i < catalog.size(); ++i)
    summarize(err, std::span(rows).subspan(i * grid.size(), grid.size()), f.scenario.alpha);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Battery sizing for grid-outage resilient PV + storage systems"};
  app.name("pvsizing");
  app.require_subcommand(1);

  CommonOptions simulate_opts, sweep_opts, compare_opts;
  auto* simulate = app.add_subcommand("simulate", "Evaluate one battery at one capacity");
  add_common(*simulate, simulate_opts, "Write a JSON report here");
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one battery over the capacity grid");
  add_common(*sweep_cmd, sweep_opts, "CSV output path (default: standard output)");
  auto* compare = app.add_subcommand("compare", "Sweep all four catalog batteries");
  add_common(*compare, compare_opts, "CSV output path (default: standard output)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*simulate) return cmd_simulate(simulate_opts, out);
    if (*sweep_cmd) return cmd_sweep(sweep_opts, out, err);
    return cmd_compare(compare_opts, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace pvsizing
