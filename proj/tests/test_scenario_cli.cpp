#include <gtest/gtest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pvsizing/cli.hpp"
#include "pvsizing/scenario.hpp"

using namespace pvsizing;
namespace fs = std::filesystem;

namespace {

const char* kBase = R"(
pv.eta = 0.16
pv.area_m2 = 20000
battery.name = lithium-ion
battery.capacity_kwh = 3000
reliability.alpha = 0.05
economics.voll = 10
simulation.n_samples = 500
simulation.seed = 7
data.synthetic.peak_demand_kw = 200
data.synthetic.hours = 720
sweep.min_kwh = 500
sweep.max_kwh = 2500
sweep.step_kwh = 500
)";

fs::path write_config(const std::string& name, const std::string& text) {
  const auto dir = fs::temp_directory_path() / "pvsizing_cli_tests";
  fs::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << text;
  return path;
}

std::string without_line(std::string text, const std::string& prefix) {
  const auto pos = text.find(prefix);
  if (pos == std::string::npos) return text;
  return text.erase(pos, text.find('\n', pos) - pos + 1);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), {});
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST(ParseScenario, DefaultsAndRequiredFields) {
  std::istringstream in(kBase);
  const auto f = parse_scenario(in);
  EXPECT_EQ(f.scenario.outage.caidi_hours, 7.83);
  EXPECT_EQ(f.scenario.outage.saifi_per_year, 0.84);
  EXPECT_EQ(f.scenario.beta, 0.10);
  EXPECT_EQ(f.scenario.econ.horizon_years, 20);
  EXPECT_EQ(f.scenario.econ.discount_rate, 0.04);
  EXPECT_EQ(f.battery->name, "lithium-ion");
  EXPECT_EQ(f.battery->unit_cost_b, 224.0);
  EXPECT_EQ(*f.capacity_kwh, 3000.0);
  EXPECT_EQ(f.grid().size(), 5u);
}

TEST(ParseScenario, ErrorsNameTheField) {
  auto field_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      parse_scenario(in);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  EXPECT_EQ(field_of(without_line(kBase, "economics.voll")), "economics.voll");
  EXPECT_EQ(field_of(without_line(kBase, "reliability.alpha")), "reliability.alpha");
  EXPECT_EQ(field_of(std::string(kBase) + "reliability.beta = 1.5\n"), "reliability.beta");
  EXPECT_EQ(field_of(std::string(kBase) + "pv.colour = blue\n"), "pv.colour");
  EXPECT_EQ(field_of(std::string(kBase) + "economics.voll = 11\n"), "economics.voll");
  EXPECT_EQ(field_of(std::string(kBase) + "simulation.efficiency_mode = sideways\n"), "simulation.efficiency_mode");
  EXPECT_EQ(field_of(std::string(kBase) + "battery.dod = 0\n"), "battery.dod");
  EXPECT_EQ(field_of(std::string(kBase) + "data.demand_csv = x.csv\n"), "data");
  EXPECT_EQ(field_of(without_line(without_line(kBase, "data.synthetic.peak"), "data.synthetic.hours")), "data");
  EXPECT_EQ(field_of(std::string(kBase) + "pv.area_m2 = big\n"), "pv.area_m2");
}

TEST(ParseScenario, CustomBatteryNeedsAllParameters) {
  std::string text = without_line(kBase, "battery.name");
  text += "battery.name = zinc-air\nbattery.cost_per_kwh = 50\nbattery.efficiency = 0.6\n";
  std::istringstream bad(text);
  EXPECT_THROW(parse_scenario(bad), ConfigError);
  std::istringstream good(text + "battery.dod = 0.8\n");
  const auto f = parse_scenario(good);
  EXPECT_EQ(f.battery->name, "zinc-air");
  EXPECT_EQ(f.battery->dod, 0.8);
}

TEST(ParseScenario, ShippedScenariosParse) {
  for (const char* name : {"case_study.cfg", "csv_example.cfg"}) {
    const auto f = load_scenario(fs::path(PVSIZING_SCENARIOS) / name);
    EXPECT_NO_THROW(load_year(f.data)) << name;
  }
  EXPECT_EQ(load_scenario(fs::path(PVSIZING_SCENARIOS) / "case_study.cfg").grid().size(), 100u);
}

TEST(Cli, SimulateWritesJsonReport) {
  const auto cfg = write_config("sim.cfg", kBase);
  const auto json_path = cfg.parent_path() / "sim.json";
  const auto r = run({"simulate", "--config", cfg.string(), "--out", json_path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("ccp"), std::string::npos);
  const auto j = nlohmann::json::parse(slurp(json_path));
  for (const char* key : {"ccp", "mean_lolp", "mean_lost_energy_kwh", "capital", "npv_penalty", "tsc"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["capital"].get<double>(), 3000.0 * 224.0);
  EXPECT_DOUBLE_EQ(j["tsc"].get<double>(), j["capital"].get<double>() + j["npv_penalty"].get<double>());

  const auto first = slurp(json_path);
  ASSERT_EQ(run({"simulate", "--config", cfg.string(), "--out", json_path.string(), "--threads", "3"}).code, 0);
  EXPECT_EQ(slurp(json_path), first);
}

TEST(Cli, MissingVollIsAConfigError) {
  const auto cfg = write_config("novoll.cfg", without_line(kBase, "economics.voll"));
  const auto r = run({"simulate", "--config", cfg.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("economics.voll"), std::string::npos) << r.err;
}

TEST(Cli, SimulateNeedsCapacity) {
  const auto cfg = write_config("nocap.cfg", without_line(kBase, "battery.capacity_kwh"));
  const auto r = run({"simulate", "--config", cfg.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("battery.capacity_kwh"), std::string::npos);
}

TEST(Cli, SweepToStdoutHasFixedColumns) {
  const auto cfg = write_config("sweep.cfg", kBase);
  const auto r = run({"sweep", "--config", cfg.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 6u);
  EXPECT_EQ(l[0], "battery,capacity_kwh,ccp,ccp_se,mean_lolp,mean_lost_energy_kwh,capital,npv_penalty,tsc,feasible");
  EXPECT_EQ(l[1].rfind("lithium-ion,500,", 0), 0u) << l[1];
  EXPECT_NE(r.err.find("lithium-ion"), std::string::npos);
}

TEST(Cli, SweepOverridesSeedAndSamples) {
  const auto cfg = write_config("override.cfg", kBase);
  const auto a = run({"sweep", "--config", cfg.string(), "--seed", "99", "--samples", "300"});
  const auto b = run({"sweep", "--config", cfg.string(), "--seed", "99", "--samples", "300"});
  const auto c = run({"sweep", "--config", cfg.string()});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  EXPECT_NE(lines(a.out)[1].find(",false"), std::string::npos);
}

TEST(Cli, InfeasibleSweepStillSucceeds) {
  const auto cfg = write_config("infeasible.cfg", without_line(kBase, "reliability.alpha") + "reliability.alpha = 0\n");
  const auto out_path = cfg.parent_path() / "infeasible.csv";
  const auto r = run({"sweep", "--config", cfg.string(), "--out", out_path.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(lines(slurp(out_path)).size(), 6u);
  EXPECT_NE(r.err.find("infeasible"), std::string::npos) << r.err;
}

TEST(Cli, CompareEmitsAllChemistriesDeterministically) {
  const auto cfg = write_config("compare.cfg", kBase);
  const auto p1 = cfg.parent_path() / "cmp1.csv";
  const auto p2 = cfg.parent_path() / "cmp2.csv";
  ASSERT_EQ(run({"compare", "--config", cfg.string(), "--out", p1.string()}).code, 0);
  ASSERT_EQ(run({"compare", "--config", cfg.string(), "--out", p2.string(), "--threads", "4"}).code, 0);
  EXPECT_EQ(slurp(p1), slurp(p2));
  const auto l = lines(slurp(p1));
  ASSERT_EQ(l.size(), 1u + 4u * 5u);
  std::set<std::string> names;
  for (std::size_t i = 1; i < l.size(); ++i) names.insert(l[i].substr(0, l[i].find(',')));
  EXPECT_EQ(names, (std::set<std::string>{"lead-acid", "sodium-sulphur", "vanadium-redox", "lithium-ion"}));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"launch"}).code, 2);
  EXPECT_EQ(run({"simulate"}).code, 2);
  EXPECT_EQ(run({"simulate", "--config", "/nonexistent/x.cfg"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);

  const auto cfg = write_config(
      "missing_data.cfg", without_line(without_line(kBase, "data.synthetic.peak"), "data.synthetic.hours") +
                              "data.demand_csv = nope_d.csv\ndata.irradiance_csv = nope_i.csv\n");
  const auto r = run({"simulate", "--config", cfg.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("nope_d.csv"), std::string::npos);
}
