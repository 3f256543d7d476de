/*
 * Command-line layer: figure sweeps, verification suites, Monte Carlo runs
 * and the imperfection grid. Angles are degrees at this boundary.
 */
#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "qeraser/imperfections.hpp"
#include "qeraser/montecarlo.hpp"

namespace qeraser::cli {

using json = nlohmann::ordered_json;

// Sweeps ---------------------------------------------------------------------

struct SweepSpec {
  std::string target;
  std::optional<std::size_t> points;
  std::optional<std::pair<double, double>> range;  // degrees or ratio r
};

struct Row {
  double x = 0.0;
  double y = 0.0;
  std::string series;
};

struct Sweep {
  bool has_series = false;
  std::vector<Row> rows;
};

const std::vector<std::string>& sweep_targets();

/// Throws std::invalid_argument for unknown targets, points < 2 or a range
/// outside the target's domain.
Sweep sweep(const SweepSpec& spec);

/// Header `x,y` or `x,y,series`, 12 significant digits.
std::string to_csv(const Sweep& s);

// Verification ---------------------------------------------------------------

struct Check {
  std::string name;
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Suites: all, binary, ternary, imperfections.
std::vector<Check> verify(const std::string& suite);
json report_json(const std::string& suite, const std::vector<Check>& checks);

// Monte Carlo ----------------------------------------------------------------

/// Reads protocol, trials, seed, eve, threads and an optional imperfections
/// object (angles in degrees). Missing keys keep their defaults.
mc::RunConfig config_from_json(const json& j, mc::RunConfig base = {});
imperfect::Params params_from_degrees(const json& j);

/// Thread count is deliberately omitted so output bytes depend only on the
/// run configuration.
json stats_json(const mc::RunConfig& config, const mc::RunStats& stats);

// Imperfection grid ----------------------------------------------------------

struct ImperfectGrid {
  std::vector<imperfect::Case> cases = {imperfect::Case::Neither, imperfect::Case::Both, imperfect::Case::AliceOnly,
                                        imperfect::Case::BobOnly};
  std::vector<double> sigma_deg = {0.0, 3.0, 10.0, 30.0};
  std::vector<double> delta_theta_deg = {0.0, 3.0, 10.0, 30.0};
  std::vector<double> gamma_deg = {0.0, 3.0, 10.0, 30.0};
};

ImperfectGrid grid_from_json(const json& j, ImperfectGrid base = {});
std::string imperfect_csv(const ImperfectGrid& grid);

// Entry point ----------------------------------------------------------------

/// Parses arguments and runs a subcommand; returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qeraser::cli
