#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace qeraser;
using namespace qeraser::cli;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "qeraser");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

Row argmax(const Sweep& s, const std::string& series = "") {
  Row best{0, -1, ""};
  for (const Row& r : s.rows)
    if (r.series == series && r.y > best.y) best = r;
  return best;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qeraser_cli_test_" + name);
}

}  // namespace

TEST(Sweep, Fig3Maximum) {
  const Sweep s = sweep({"fig3", 721, std::pair{0.0, 180.0}});
  ASSERT_EQ(s.rows.size(), 721u);
  const Row m = argmax(s);
  EXPECT_NEAR(m.x, 67.5, 1e-9);
  EXPECT_NEAR(m.y, 0.8536, 1e-4);
}

TEST(Sweep, TernaryFigureMaxima) {
  const Row q2 = argmax(sweep({"fig10", std::nullopt, std::pair{-3.0, 3.0}}));
  EXPECT_NEAR(q2.x, 0.0, 1e-12);
  EXPECT_NEAR(q2.y, 0.4, 1e-3);
  const Row q3 = argmax(sweep({"fig12", std::nullopt, std::pair{-3.0, 3.0}}));
  EXPECT_NEAR(q3.x, 0.0, 1e-12);
  EXPECT_NEAR(q3.y, 0.365, 1e-3);
  const Row q1 = argmax(sweep({"fig11", std::nullopt, std::nullopt}));
  EXPECT_NEAR(q1.x, 0.0, 1e-12);
}

TEST(Sweep, RandomPolarizationPeak) {
  const Row m = argmax(sweep({"fig4", 721, std::pair{0.0, 90.0}}));
  EXPECT_NEAR(m.x, 22.5, 1e-9);
}

TEST(Sweep, MultiSeriesTargets) {
  const Sweep s = sweep({"fig7", 181, std::nullopt});
  EXPECT_TRUE(s.has_series);
  EXPECT_EQ(s.rows.size(), 362u);
  const Row b = argmax(s, "B_pole");
  EXPECT_NEAR(b.y, 1.0, 1e-12);
  const Sweep trine = sweep({"fig8", 361, std::nullopt});
  EXPECT_EQ(trine.rows.size(), 3u * 361u);
}

TEST(Sweep, CsvSchema) {
  const std::string csv = to_csv(sweep({"fig3", 3, std::pair{0.0, 90.0}}));
  EXPECT_EQ(csv.substr(0, 4), "x,y\n");
  EXPECT_NE(csv.find("45,"), std::string::npos);
  const std::string multi = to_csv(sweep({"fig6", 2, std::nullopt}));
  EXPECT_EQ(multi.substr(0, 11), "x,y,series\n");
  // 12 significant digits for the two-state value at 67.5°.
  const std::string peak = to_csv(sweep({"fig3", 2, std::pair{67.5, 90.0}}));
  EXPECT_NE(peak.find("67.5,0.853553390593\n"), std::string::npos);
}

TEST(Sweep, TableBounds) {
  const Sweep s = sweep({"table_bounds", std::nullopt, std::nullopt});
  const auto it = std::find_if(s.rows.begin(), s.rows.end(), [](const Row& r) { return r.series == "m2_p_sift"; });
  ASSERT_NE(it, s.rows.end());
  EXPECT_DOUBLE_EQ(it->y, 9.0 / 16.0);
}

TEST(Sweep, RejectsBadSpecs) {
  EXPECT_THROW(sweep({"fig5", std::nullopt, std::nullopt}), std::invalid_argument);
  EXPECT_THROW(sweep({"fig3", 1, std::nullopt}), std::invalid_argument);
  EXPECT_THROW(sweep({"fig3", 10, std::pair{10.0, 5.0}}), std::invalid_argument);
  EXPECT_THROW(sweep({"fig6", 10, std::pair{-120.0, 0.0}}), std::invalid_argument);
}

TEST(Verify, SuitesPass) {
  for (const char* suite : {"binary", "ternary", "imperfections"}) {
    const auto checks = verify(suite);
    EXPECT_FALSE(checks.empty());
    for (const Check& c : checks) EXPECT_TRUE(c.pass) << suite << ": " << c.name << " actual " << c.actual;
  }
  EXPECT_THROW(verify("quantum"), std::invalid_argument);
}

TEST(Verify, ReportContainsNamedChecks) {
  const json j = report_json("binary", verify("binary"));
  bool found = false;
  for (const auto& c : j.at("checks"))
    if (c.at("name") == "two_state_bound") {
      found = true;
      EXPECT_NEAR(c.at("expected").get<double>(), 0.853553, 1e-6);
    }
  EXPECT_TRUE(found);
  EXPECT_EQ(j.at("failed").get<int>(), 0);
  const json t = report_json("ternary", verify("ternary"));
  for (const auto& c : t.at("checks"))
    if (c.at("name") == "total_success") {
      EXPECT_DOUBLE_EQ(c.at("expected").get<double>(), 0.54);
      EXPECT_DOUBLE_EQ(c.at("tolerance").get<double>(), 0.02);
    }
}

TEST(Mc, ConfigFromJsonAndFlagsOverride) {
  const auto path = temp_file("config.json");
  {
    std::ofstream f(path);
    f << R"({"protocol": "ternary_m2", "trials": 5000, "seed": 9, "eve": "trine_map"})";
  }
  const Result a = invoke({"mc", "--config", path.string()});
  ASSERT_EQ(a.status, 0) << a.err;
  const json ja = json::parse(a.out);
  EXPECT_EQ(ja.at("config").at("protocol"), "ternary_m2");
  EXPECT_EQ(ja.at("trials"), 5000);
  EXPECT_TRUE(ja.contains("eve"));

  const Result b = invoke({"mc", "--config", path.string(), "--trials", "2000", "--eve", "none"});
  ASSERT_EQ(b.status, 0) << b.err;
  const json jb = json::parse(b.out);
  EXPECT_EQ(jb.at("trials"), 2000);
  EXPECT_FALSE(jb.contains("eve"));
  std::filesystem::remove(path);
}

TEST(Mc, OutputIsByteIdenticalAcrossThreadCounts) {
  const Result a = invoke({"mc", "--protocol", "ternary-m2", "--trials", "30000", "--seed", "42", "--threads", "1"});
  const Result b = invoke({"mc", "--protocol", "ternary-m2", "--trials", "30000", "--seed", "42", "--threads", "5"});
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  const double rate = json::parse(a.out).at("sift_rate").at("value").get<double>();
  EXPECT_NEAR(rate, 0.5625, 4 * std::sqrt(0.5625 * 0.4375 / 30000));
}

TEST(Mc, ImperfectionFlagsInDegrees) {
  const Result r = invoke({"mc", "--protocol", "binary", "--trials", "1000", "--sigma-u", "10", "--sigma-l", "10"});
  ASSERT_EQ(r.status, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j.at("config").at("imperfections").at("sigma_u").get<double>(), 10.0, 1e-12);
  EXPECT_NEAR(j.at("config").at("imperfections").at("beta_A").get<double>(), 45.0, 1e-12);
}

TEST(Mc, UsageErrors) {
  EXPECT_NE(invoke({"mc", "--protocol", "binary", "--trials", "0"}).status, 0);
  EXPECT_NE(invoke({"mc", "--protocol", "b92"}).status, 0);
  EXPECT_NE(invoke({"mc", "--protocol", "binary", "--eve", "trine_map"}).status, 0);
  EXPECT_NE(invoke({"mc", "--trials", "abc"}).status, 0);
  EXPECT_NE(invoke({}).status, 0);
}

TEST(Imperfect, GridCsv) {
  const Result r = invoke({"imperfect", "--case", "both", "--sigma", "0", "10", "--delta-theta", "3", "--gamma", "0"});
  ASSERT_EQ(r.status, 0) << r.err;
  std::istringstream lines(r.out);
  std::string header, row;
  std::getline(lines, header);
  EXPECT_EQ(header.rfind("case,sigma_deg", 0), 0u);
  int rows = 0;
  while (std::getline(lines, row)) {
    ++rows;
    const double diff = std::stod(row.substr(row.rfind(',') + 1));
    EXPECT_LT(diff, 1e-9);
  }
  EXPECT_EQ(rows, 2);
}

TEST(Output, UnwritablePathFails) {
  const Result r = invoke({"sweep", "--target", "fig3", "--out", "/nonexistent/dir/out.csv"});
  EXPECT_NE(r.status, 0);
}
