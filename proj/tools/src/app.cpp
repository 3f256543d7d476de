#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "cli.hpp"

namespace qeraser::cli {

namespace {

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << text;
  if (!f) throw std::runtime_error("failed writing output file: " + path);
}

json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read config file: " + path);
  return json::parse(f);
}

struct SweepArgs {
  std::string target;
  std::size_t points = 0;
  std::vector<double> range;
  std::string out;
};

struct VerifyArgs {
  std::string suite = "all";
  std::string out;
};

struct McArgs {
  std::string config, protocol, eve, out;
  std::uint64_t trials = 0, seed = 0;
  unsigned threads = 0;
  double delta1 = 0, delta2 = 0, sigma_u = 0, sigma_l = 0;
  double beta_A = 45, mu_A = 45, beta_B = 45, mu_B = 45;
};

struct ImperfectArgs {
  std::string config, out;
  std::vector<std::string> cases;
  std::vector<double> sigma, delta_theta, gamma;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum eraser key distribution simulator"};
  app.require_subcommand(1);

  SweepArgs sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate a figure or table curve and write CSV");
  sweep_cmd->add_option("--target", sw.target, "fig3, fig4, fig6 ... fig12 or table_bounds")
      ->required()
      ->check(CLI::IsMember(sweep_targets()));
  sweep_cmd->add_option("--points", sw.points, "Grid size (at least 2)");
  sweep_cmd->add_option("--range", sw.range, "lo hi, degrees for angle targets, r for fig9..fig12")->expected(2);
  sweep_cmd->add_option("--out", sw.out, "CSV path (stdout when omitted)");

  VerifyArgs vf;
  auto* verify_cmd = app.add_subcommand("verify", "Run golden-value checks and write a JSON report");
  verify_cmd->add_option("--suite", vf.suite, "all, binary, ternary or imperfections")
      ->check(CLI::IsMember({"all", "binary", "ternary", "imperfections"}));
  verify_cmd->add_option("--out", vf.out, "JSON path (stdout when omitted)");

  McArgs m;
  auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo protocol run");
  mc_cmd->add_option("--config", m.config, "JSON run config; flags override its values");
  auto* o_protocol = mc_cmd->add_option("--protocol", m.protocol, "binary, ternary_m1, ternary_m2 or bb84");
  auto* o_trials = mc_cmd->add_option("--trials", m.trials, "Number of trials");
  auto* o_seed = mc_cmd->add_option("--seed", m.seed, "64-bit seed");
  auto* o_eve = mc_cmd->add_option("--eve", m.eve, "none, optimal_binary, trine_map or hv_strategy_a");
  auto* o_threads = mc_cmd->add_option("--threads", m.threads, "Worker threads (0: automatic)");
  const std::pair<CLI::Option*, double*> imperfection_flags[] = {
      {mc_cmd->add_option("--delta1", m.delta1, "BS1 deviation, degrees"), &m.delta1},
      {mc_cmd->add_option("--delta2", m.delta2, "BS2 deviation, degrees"), &m.delta2},
      {mc_cmd->add_option("--sigma-u", m.sigma_u, "Upper-arm decoherence angle, degrees"), &m.sigma_u},
      {mc_cmd->add_option("--sigma-l", m.sigma_l, "Lower-arm decoherence angle, degrees"), &m.sigma_l},
      {mc_cmd->add_option("--beta-A", m.beta_A, "Alice upper rotator, degrees"), &m.beta_A},
      {mc_cmd->add_option("--mu-A", m.mu_A, "Alice lower rotator, degrees"), &m.mu_A},
      {mc_cmd->add_option("--beta-B", m.beta_B, "Bob lower rotator, degrees"), &m.beta_B},
      {mc_cmd->add_option("--mu-B", m.mu_B, "Bob upper rotator, degrees"), &m.mu_B}};
  mc_cmd->add_option("--out", m.out, "JSON path (stdout when omitted)");

  ImperfectArgs im;
  auto* imp_cmd = app.add_subcommand("imperfect", "Closed-form vs simulated detection over a parameter grid");
  imp_cmd->add_option("--config", im.config, "JSON grid config; flags override its values");
  imp_cmd->add_option("--case", im.cases, "neither, both, alice_only, bob_only (repeatable)");
  imp_cmd->add_option("--sigma", im.sigma, "Decoherence angles, degrees");
  imp_cmd->add_option("--delta-theta", im.delta_theta, "BS2 deviations, degrees");
  imp_cmd->add_option("--gamma", im.gamma, "Bob rotator offsets, degrees");
  imp_cmd->add_option("--out", im.out, "CSV path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*sweep_cmd) {
      SweepSpec spec{sw.target, std::nullopt, std::nullopt};
      if (sweep_cmd->count("--points")) spec.points = sw.points;
      if (sw.range.size() == 2) spec.range = std::pair{sw.range[0], sw.range[1]};
      emit(to_csv(sweep(spec)), sw.out, out);
      return 0;
    }
    if (*verify_cmd) {
      const auto checks = verify(vf.suite);
      emit(report_json(vf.suite, checks).dump(2) + "\n", vf.out, out);
      for (const Check& c : checks)
        if (!c.pass) {
          err << "verify: " << c.name << " failed\n";
          return 1;
        }
      return 0;
    }
    if (*mc_cmd) {
      mc::RunConfig cfg;
      if (!m.config.empty()) cfg = config_from_json(read_json(m.config));
      if (o_protocol->count()) cfg.protocol = mc::parse_protocol(m.protocol);
      if (o_trials->count()) cfg.trials = m.trials;
      if (o_seed->count()) cfg.seed = m.seed;
      if (o_eve->count()) cfg.eve = mc::parse_eve(m.eve);
      if (o_threads->count()) cfg.threads = m.threads;
      bool any_imperfection = false;
      for (const auto& f : imperfection_flags) any_imperfection = any_imperfection || f.first->count() > 0;
      if (any_imperfection) {
        imperfect::Params p = cfg.imperfections.value_or(imperfect::Params{});
        double imperfect::Params::* const members[] = {
            &imperfect::Params::delta1, &imperfect::Params::delta2, &imperfect::Params::sigma_u,
            &imperfect::Params::sigma_l, &imperfect::Params::beta_A, &imperfect::Params::mu_A,
            &imperfect::Params::beta_B, &imperfect::Params::mu_B};
        for (std::size_t i = 0; i < std::size(members); ++i)
          if (imperfection_flags[i].first->count()) p.*members[i] = deg(*imperfection_flags[i].second);
        cfg.imperfections = p;
      }
      mc::validate(cfg);
      emit(stats_json(cfg, mc::run(cfg)).dump(2) + "\n", m.out, out);
      return 0;
    }
    if (*imp_cmd) {
      ImperfectGrid grid;
      if (!im.config.empty()) grid = grid_from_json(read_json(im.config));
      if (!im.cases.empty()) {
        grid.cases.clear();
        for (const auto& c : im.cases) grid.cases.push_back(imperfect::parse_case(c));
      }
      if (!im.sigma.empty()) grid.sigma_deg = im.sigma;
      if (!im.delta_theta.empty()) grid.delta_theta_deg = im.delta_theta;
      if (!im.gamma.empty()) grid.gamma_deg = im.gamma;
      emit(imperfect_csv(grid), im.out, out);
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

}  // namespace qeraser::cli
