#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "recurlab/config.hpp"
#include "recurlab/errors.hpp"
#include "recurlab/report.hpp"

using namespace recurlab;
namespace fs = std::filesystem;

namespace {

fs::path temp_path(const std::string& name) {
  return fs::temp_directory_path() / ("recurlab_test_" + name);
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

}  // namespace

TEST(Config, DefaultsRoundTrip) {
  const auto path = temp_path("defaults.json");
  write_config(Config{}, path);
  EXPECT_EQ(read_config(path), Config{});
  fs::remove(path);
}

TEST(Config, AwkwardRealsRoundTrip) {
  Config c;
  c.map_kind = MapKind::ParamMP;
  c.map_z = 2.0 / 3.0 + 2.0;
  c.map_c = 0.1;
  c.ball_r_min = 1.2345678901234567e-7;
  c.orbit_iters = 123456789012;
  c.ensemble_seed = 18446744073709551615ull;
  c.out_path = "out dir/x.csv";
  EXPECT_EQ(parse_config(format_config(c)), c);
  EXPECT_EQ(parse_config(format_config(c, -1)), c);
}

TEST(Config, ValuesAreDecimalStrings) {
  const std::string text = format_config(Config{});
  EXPECT_NE(text.find("\"map.z\": \"3\""), std::string::npos);
  EXPECT_NE(text.find("\"orbit.iters\": \"1000000\""), std::string::npos);
}

TEST(Config, ParsesScientificCounts) {
  const auto c = parse_config(R"({"orbit.iters": "1e8", "map.kind": "doubling", "hill.k": 1000})");
  EXPECT_EQ(c.orbit_iters, 100'000'000u);
  EXPECT_EQ(c.map_kind, MapKind::Doubling);
  EXPECT_EQ(c.hill_k, 1000u);
}

TEST(Config, ErrorsNameTheKey) {
  auto key_of = [](const std::string& text) {
    try {
      parse_config(text).validate();
    } catch (const ConfigError& e) {
      return e.key();
    }
    return std::string("<none>");
  };
  EXPECT_EQ(key_of(R"({"map.z": "0.5"})"), "map.z");
  EXPECT_EQ(key_of(R"({"map.kind": "param-mp", "map.c": "1.5"})"), "map.c");
  EXPECT_EQ(key_of(R"({"orbit.iters": "1.5"})"), "orbit.iters");
  EXPECT_EQ(key_of(R"({"orbit.iters": "-3"})"), "orbit.iters");
  EXPECT_EQ(key_of(R"({"bogus": "1"})"), "bogus");
  EXPECT_EQ(key_of(R"({"ball.grid_points": "2"})"), "ball.grid_points");
  EXPECT_EQ(key_of(R"({"counterexample.d": "0.7"})"), "counterexample.d");
  EXPECT_EQ(key_of("[1,2]"), "<document>");
  EXPECT_EQ(key_of("{}"), "<none>");
  EXPECT_THROW(read_config(temp_path("missing.json")), ConfigError);
}

TEST(Report, HeaderOnly) {
  ExperimentReport r;
  r.header = {"point_index", "x0", "slope", "intercept", "n_resolved"};
  std::ostringstream out;
  write_report_csv(r, out);
  const auto lines = data_lines(out.str());
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0], "point_index,x0,slope,intercept,n_resolved");
}

TEST(Report, RowsAndAggregateBlock) {
  ExperimentReport r;
  r.experiment = "ball";
  r.header = {"point_index", "x0", "slope", "intercept", "n_resolved"};
  for (int i = 0; i < 3; ++i) r.add_row({std::to_string(i), "0.5", "2", "0.1", "9"});
  r.add_aggregate("slope_median", 2.0);
  r.prediction = 2.0;
  r.measured = 1.9;
  const auto path = temp_path("report.csv");
  write_report_csv(r, path);
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(data_lines(text.str()).size(), 4u);
  EXPECT_NE(text.str().find("# slope_median=2\n"), std::string::npos);
  EXPECT_EQ(text.str().find('\r'), std::string::npos);
  EXPECT_THROW(r.add_row({"1"}), std::logic_error);
  EXPECT_THROW(write_report_csv(r, fs::path("/nonexistent-dir/x.csv")), std::runtime_error);
  fs::remove(path);
}

TEST(Report, Headline) {
  ExperimentReport r;
  r.prediction = 2.0;
  r.measured = 1.5;
  EXPECT_EQ(headline(r), "prediction=2 measured=1.5 rel_err=0.25");
  r.prediction = 0.0;
  EXPECT_EQ(headline(r), "prediction=0 measured=1.5 rel_err=nan");
}
