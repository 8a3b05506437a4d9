#include "pvsizing/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <string_view>

namespace pvsizing {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

class KeyValues {
 public:
  void add(std::string key, std::string value, std::size_t line) {
    if (values_.count(key)) throw ConfigError(key, "duplicate key (line " + std::to_string(line) + ")");
    values_.emplace(std::move(key), std::move(value));
  }

  std::optional<std::string> text(const std::string& key) {
    used_.insert(key);
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<double> number(const std::string& key) {
    auto t = text(key);
    if (!t) return std::nullopt;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t->data(), t->data() + t->size(), v);
    if (t->empty() || ec != std::errc{} || ptr != t->data() + t->size() || !std::isfinite(v))
      throw ConfigError(key, "expected a number, got '" + *t + "'");
    return v;
  }

  template <typename Int>
  std::optional<Int> integer(const std::string& key) {
    auto t = text(key);
    if (!t) return std::nullopt;
    Int v{};
    auto [ptr, ec] = std::from_chars(t->data(), t->data() + t->size(), v);
    if (t->empty() || ec != std::errc{} || ptr != t->data() + t->size())
      throw ConfigError(key, "expected a non-negative integer, got '" + *t + "'");
    return v;
  }

  double required_number(const std::string& key) {
    auto v = number(key);
    if (!v) throw ConfigError(key, "required field is missing");
    return *v;
  }

  void reject_unused() const {
    for (const auto& [key, value] : values_)
      if (!used_.count(key)) throw ConfigError(key, "unknown key");
  }

 private:
  std::map<std::string, std::string> values_;
  std::set<std::string> used_;
};

void check(bool ok, const std::string& field, const std::string& message) {
  if (!ok) throw ConfigError(field, message);
}

bool is_fraction(double x) { return x >= 0.0 && x <= 1.0; }
bool is_open_fraction(double x) { return x > 0.0 && x <= 1.0; }

}  // namespace

ScenarioFile parse_scenario(std::istream& in, const std::filesystem::path& base_dir) {
  KeyValues kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto body = std::string_view(line);
    if (auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
    const auto key = trim(body.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno), "empty key");
    kv.add(std::string(key), std::string(trim(body.substr(eq + 1))), lineno);
  }

  ScenarioFile f;
  auto& s = f.scenario;

  s.pv.conversion_efficiency_eta = kv.number("pv.eta").value_or(0.16);
  check(is_open_fraction(s.pv.conversion_efficiency_eta), "pv.eta", "must lie in (0, 1]");
  s.pv.array_area_a = kv.number("pv.area_m2").value_or(20000.0);
  check(s.pv.array_area_a > 0.0, "pv.area_m2", "must be positive");

  // Battery: a catalog name, explicit parameters, or a catalog name with overrides.
  {
    auto name = kv.text("battery.name");
    auto cost = kv.number("battery.cost_per_kwh");
    auto eff = kv.number("battery.efficiency");
    auto dod = kv.number("battery.dod");
    if (name || cost || eff || dod) {
      BatterySpec spec;
      bool from_catalog = false;
      if (name) {
        spec.name = *name;
        try {
          spec = catalog_battery(*name);
          from_catalog = true;
        } catch (const ModelError&) {
        }
      }
      if (!from_catalog) {
        check(cost.has_value(), "battery.cost_per_kwh", "required for a battery outside the catalog");
        check(eff.has_value(), "battery.efficiency", "required for a battery outside the catalog");
        check(dod.has_value(), "battery.dod", "required for a battery outside the catalog");
        if (!name) spec.name = "custom";
      }
      if (cost) spec.unit_cost_b = *cost;
      if (eff) spec.efficiency_e = *eff;
      if (dod) spec.dod = *dod;
      check(spec.unit_cost_b >= 0.0, "battery.cost_per_kwh", "must be >= 0");
      check(is_open_fraction(spec.efficiency_e), "battery.efficiency", "must lie in (0, 1]");
      check(is_open_fraction(spec.dod), "battery.dod", "must lie in (0, 1]");
      f.battery = spec;
    }
  }
  if (auto v = kv.number("battery.capacity_kwh")) {
    check(*v >= 0.0, "battery.capacity_kwh", "must be >= 0");
    f.capacity_kwh = *v;
  }

  s.outage.caidi_hours = kv.number("outage.caidi_hours").value_or(7.83);
  check(s.outage.caidi_hours > 0.0, "outage.caidi_hours", "must be positive");
  s.outage.saifi_per_year = kv.number("outage.saifi_per_year").value_or(0.84);
  check(s.outage.saifi_per_year > 0.0, "outage.saifi_per_year", "must be positive");
  if (auto v = kv.text("outage.duration_model")) {
    try {
      s.duration_model = parse_duration_model(*v);
    } catch (const ModelError& e) {
      throw ConfigError("outage.duration_model", e.what());
    }
  }

  s.alpha = kv.required_number("reliability.alpha");
  check(is_fraction(s.alpha), "reliability.alpha", "must lie on [0, 1]");
  s.beta = kv.number("reliability.beta").value_or(0.10);
  check(is_fraction(s.beta), "reliability.beta", "must lie on [0, 1]");

  s.econ.voll = kv.required_number("economics.voll");
  check(s.econ.voll >= 0.0, "economics.voll", "must be >= 0");
  s.econ.horizon_years = kv.integer<int>("economics.horizon_years").value_or(20);
  check(s.econ.horizon_years >= 1, "economics.horizon_years", "must be at least 1");
  s.econ.discount_rate = kv.number("economics.discount_rate").value_or(0.04);
  check(s.econ.discount_rate >= 0.0, "economics.discount_rate", "must be >= 0");

  s.dt_h = kv.number("simulation.dt_hours").value_or(1.0);
  check(s.dt_h > 0.0, "simulation.dt_hours", "must be positive");
  f.n_samples = kv.integer<std::size_t>("simulation.n_samples").value_or(10000);
  check(f.n_samples >= 1, "simulation.n_samples", "must be at least 1");
  f.seed = kv.integer<std::uint64_t>("simulation.seed").value_or(42);
  if (auto v = kv.text("simulation.efficiency_mode")) {
    try {
      s.mode = parse_efficiency_mode(*v);
    } catch (const ModelError& e) {
      throw ConfigError("simulation.efficiency_mode", e.what());
    }
  }
  s.threads = kv.integer<unsigned>("simulation.threads").value_or(1);

  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
  };
  if (auto v = kv.text("data.demand_csv")) f.data.demand_csv = resolve(*v);
  if (auto v = kv.text("data.irradiance_csv")) f.data.irradiance_csv = resolve(*v);
  {
    auto peak_d = kv.number("data.synthetic.peak_demand_kw");
    auto peak_i = kv.number("data.synthetic.peak_irradiance_w_m2");
    auto hours = kv.integer<std::size_t>("data.synthetic.hours");
    auto seed = kv.integer<std::uint64_t>("data.synthetic.seed");
    if (peak_d || peak_i || hours || seed) {
      SyntheticData syn;
      check(peak_d.has_value(), "data.synthetic.peak_demand_kw", "required for synthetic data");
      syn.peak_demand_kw = *peak_d;
      syn.peak_irradiance_w_m2 = peak_i.value_or(1000.0);
      syn.hours = hours.value_or(8760);
      syn.seed = seed.value_or(42);
      check(syn.peak_demand_kw > 0.0, "data.synthetic.peak_demand_kw", "must be positive");
      check(syn.peak_irradiance_w_m2 > 0.0, "data.synthetic.peak_irradiance_w_m2", "must be positive");
      check(syn.hours > 0 && syn.hours % 24 == 0, "data.synthetic.hours", "must be a positive multiple of 24");
      f.data.synthetic = syn;
    }
  }
  const bool has_csv = f.data.demand_csv || f.data.irradiance_csv;
  if (has_csv && f.data.synthetic) throw ConfigError("data", "give either CSV files or synthetic data, not both");
  if (has_csv) {
    check(f.data.demand_csv.has_value(), "data.demand_csv", "required alongside data.irradiance_csv");
    check(f.data.irradiance_csv.has_value(), "data.irradiance_csv", "required alongside data.demand_csv");
  } else if (!f.data.synthetic) {
    throw ConfigError("data", "required: data.demand_csv + data.irradiance_csv, or data.synthetic.*");
  }

  f.sweep_min_kwh = kv.number("sweep.min_kwh").value_or(200.0);
  f.sweep_max_kwh = kv.number("sweep.max_kwh").value_or(20000.0);
  f.sweep_step_kwh = kv.number("sweep.step_kwh").value_or(200.0);
  check(f.sweep_min_kwh >= 0.0, "sweep.min_kwh", "must be >= 0");
  check(f.sweep_max_kwh >= f.sweep_min_kwh, "sweep.max_kwh", "must be >= sweep.min_kwh");
  check(f.sweep_step_kwh > 0.0, "sweep.step_kwh", "must be positive");

  kv.reject_unused();
  return f;
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open " + path.string());
  return parse_scenario(in, path.parent_path());
}

AlignedYear load_year(const DataSource& data) {
  if (data.synthetic)
    return synthetic_year(data.synthetic->peak_demand_kw, data.synthetic->peak_irradiance_w_m2, data.synthetic->hours,
                          data.synthetic->seed);
  if (!data.demand_csv || !data.irradiance_csv) throw ConfigError("data", "no data source configured");
  auto demand = load_series(*data.demand_csv, SeriesKind::kDemand);
  auto irradiance = load_series(*data.irradiance_csv, SeriesKind::kIrradiance);
  return align(std::move(demand), std::move(irradiance));
}

}  // namespace pvsizing
