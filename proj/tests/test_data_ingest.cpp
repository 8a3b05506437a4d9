#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "pvsizing/data_ingest.hpp"

using namespace pvsizing;
namespace fs = std::filesystem;

namespace {

fs::path fixture(const std::string& name) { return fs::path(PVSIZING_TEST_DATA) / name; }

fs::path temp_file(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "pvsizing_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(LoadSeries, WellFormedFixtures) {
  const auto demand = load_series(fixture("demand_24.csv"), SeriesKind::kDemand);
  ASSERT_EQ(demand.hours(), 24u);
  EXPECT_EQ(demand[0], 100.0);
  EXPECT_EQ(demand[23], 330.0);
  const auto irr = load_series(fixture("irradiance_24.csv"), SeriesKind::kIrradiance);
  EXPECT_EQ(irr[0], 0.0);
  EXPECT_EQ(irr[12], 800.0);
}

TEST(LoadSeries, FullYearRoundTrips) {
  std::vector<double> v(8760);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 400.0 + 0.125 * static_cast<double>(i % 97);
  const auto path = temp_file("year.csv");
  write_series(path, HourlySeries(v), SeriesKind::kDemand);
  const auto back = load_series(path, SeriesKind::kDemand);
  EXPECT_EQ(back.hours(), 8760u);
  EXPECT_EQ(back, HourlySeries(v));
}

TEST(LoadSeries, RoundTripIsExactForArbitraryDoubles) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(0.0, 5000.0);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> v(24 * (1 + trial));
    for (auto& x : v) x = dist(rng);
    const HourlySeries s(v);
    const auto path = temp_file("rt.csv");
    // Start on 28 Feb of a leap year so the stamps cross 29 Feb.
    write_series(path, s, SeriesKind::kIrradiance, "2020-02-28T00:00");
    EXPECT_EQ(load_series(path, SeriesKind::kIrradiance), s);
  }
}

TEST(LoadSeries, NegativeValueNamesTheRow) {
  try {
    load_series(fixture("negative.csv"), SeriesKind::kDemand);
    FAIL() << "expected NegativeValue";
  } catch (const NegativeValue& e) {
    EXPECT_NE(std::string(e.what()).find(":8:"), std::string::npos) << e.what();
  }
}

TEST(LoadSeries, RejectsMalformedFixtures) {
  EXPECT_THROW(load_series(fixture("does_not_exist.csv"), SeriesKind::kDemand), MissingFile);
  EXPECT_THROW(load_series(fixture("gap.csv"), SeriesKind::kDemand), GapError);
  EXPECT_THROW(load_series(fixture("short_23.csv"), SeriesKind::kDemand), GapError);
  EXPECT_THROW(load_series(fixture("bad_header.csv"), SeriesKind::kDemand), SchemaError);
  EXPECT_THROW(load_series(fixture("wrong_units.csv"), SeriesKind::kDemand), SchemaError);
  EXPECT_THROW(load_series(fixture("bad_value.csv"), SeriesKind::kDemand), SchemaError);
  EXPECT_THROW(load_series(fixture("extra_column.csv"), SeriesKind::kDemand), SchemaError);
  // A demand file is not an irradiance file.
  EXPECT_THROW(load_series(fixture("demand_24.csv"), SeriesKind::kIrradiance), SchemaError);
}

TEST(LoadSeries, Rows8759IsAGap) {
  std::vector<double> v(8784, 1.0);
  const auto path = temp_file("leap.csv");
  write_series(path, HourlySeries(v), SeriesKind::kDemand);
  EXPECT_EQ(load_series(path, SeriesKind::kDemand).hours(), 8784u);

  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  // Keep the two header lines and 8759 data rows.
  std::size_t pos = 0;
  for (int i = 0; i < 2 + 8759; ++i) pos = text.find('\n', pos) + 1;
  const auto cut = temp_file("short.csv");
  std::ofstream(cut) << text.substr(0, pos);
  EXPECT_THROW(load_series(cut, SeriesKind::kDemand), GapError);
}

TEST(LoadSeries, AcceptsTimestampVariants) {
  const auto path = temp_file("variants.csv");
  {
    std::ofstream out(path);
    out << "timestamp,value\r\n";
    for (int h = 0; h < 24; ++h) {
      char stamp[32];
      const char* fmt = h % 3 == 0 ? "2019-06-01T%02d" : (h % 3 == 1 ? "2019-06-01T%02d:00:00Z" : "2019-06-01 %02d:00");
      std::snprintf(stamp, sizeof stamp, fmt, h);
      out << stamp << ", " << h << "\r\n";
    }
  }
  EXPECT_EQ(load_series(path, SeriesKind::kDemand).hours(), 24u);
}

TEST(HourlySeries, ValidatesValues) {
  EXPECT_THROW(HourlySeries(std::vector<double>(24, -1.0)), NegativeValue);
  EXPECT_THROW(HourlySeries(std::vector<double>(25, 1.0)), GapError);
  EXPECT_THROW(HourlySeries(std::vector<double>{}), GapError);
}

TEST(Align, LengthChecks) {
  EXPECT_NO_THROW(align(HourlySeries(std::vector<double>(8760, 1.0)), HourlySeries(std::vector<double>(8760, 1.0))));
  EXPECT_THROW(align(HourlySeries(std::vector<double>(8760, 1.0)), HourlySeries(std::vector<double>(8784, 1.0))),
               LengthMismatch);
  const auto year = align(load_series(fixture("demand_24.csv"), SeriesKind::kDemand),
                          load_series(fixture("irradiance_24.csv"), SeriesKind::kIrradiance));
  EXPECT_EQ(year.hours(), 24u);
  EXPECT_THROW(align(load_series(fixture("demand_48.csv"), SeriesKind::kDemand),
                     load_series(fixture("irradiance_24.csv"), SeriesKind::kIrradiance)),
               LengthMismatch);
}

TEST(SyntheticYear, DeterministicAndWellShaped) {
  const auto a = synthetic_year(1000.0, 1000.0, 8760, 42);
  const auto b = synthetic_year(1000.0, 1000.0, 8760, 42);
  EXPECT_EQ(a.demand, b.demand);
  EXPECT_EQ(a.irradiance, b.irradiance);
  EXPECT_NE(synthetic_year(1000.0, 1000.0, 8760, 43).irradiance, a.irradiance);

  double demand_sum = 0.0;
  for (std::size_t i = 0; i < a.hours(); ++i) {
    const std::size_t hour = i % 24;
    if (hour < 6 || hour >= 18) EXPECT_EQ(a.irradiance[i], 0.0) << i;
    EXPECT_LE(a.irradiance[i], 1000.0);
    EXPECT_LE(a.demand[i], 1000.0);
    EXPECT_GT(a.demand[i], 0.0);
    demand_sum += a.demand[i];
  }
  EXPECT_GT(demand_sum / 8760.0, 0.0);
  EXPECT_THROW(synthetic_year(0.0, 1000.0), std::invalid_argument);
  EXPECT_THROW(synthetic_year(10.0, 1000.0, 30), std::invalid_argument);
}
