#include <stdexcept>

#include "cli.hpp"

namespace qeraser::cli {

namespace {

json rate_json(const mc::Rate& r) {
  return {{"hits", r.hits}, {"total", r.total}, {"value", r.value()}, {"standard_error", r.standard_error()}};
}

}  // namespace

imperfect::Params params_from_degrees(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("imperfections must be a JSON object");
  imperfect::Params p;
  const std::pair<const char*, double imperfect::Params::*> fields[] = {
      {"delta1", &imperfect::Params::delta1}, {"delta2", &imperfect::Params::delta2},
      {"sigma_u", &imperfect::Params::sigma_u}, {"sigma_l", &imperfect::Params::sigma_l},
      {"beta_A", &imperfect::Params::beta_A}, {"mu_A", &imperfect::Params::mu_A},
      {"beta_B", &imperfect::Params::beta_B}, {"mu_B", &imperfect::Params::mu_B}};
  for (const auto& [key, member] : fields)
    if (j.contains(key)) p.*member = deg(j.at(key).get<double>());
  for (const auto& item : j.items()) {
    bool known = false;
    for (const auto& f : fields) known = known || item.key() == f.first;
    if (!known) throw std::invalid_argument("unknown imperfection parameter: " + item.key());
  }
  return p;
}

mc::RunConfig config_from_json(const json& j, mc::RunConfig base) {
  if (!j.is_object()) throw std::invalid_argument("run config must be a JSON object");
  if (j.contains("protocol")) base.protocol = mc::parse_protocol(j.at("protocol").get<std::string>());
  if (j.contains("trials")) base.trials = j.at("trials").get<std::uint64_t>();
  if (j.contains("seed")) base.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("eve")) base.eve = mc::parse_eve(j.at("eve").get<std::string>());
  if (j.contains("threads")) base.threads = j.at("threads").get<unsigned>();
  if (j.contains("imperfections")) base.imperfections = params_from_degrees(j.at("imperfections"));
  return base;
}

json stats_json(const mc::RunConfig& config, const mc::RunStats& s) {
  json j;
  j["config"] = {{"protocol", mc::to_string(config.protocol)},
                 {"trials", config.trials},
                 {"seed", config.seed},
                 {"eve", mc::to_string(config.eve)}};
  if (config.imperfections) {
    const auto& p = *config.imperfections;
    j["config"]["imperfections"] = {{"delta1", to_deg(p.delta1)}, {"delta2", to_deg(p.delta2)},
                                    {"sigma_u", to_deg(p.sigma_u)}, {"sigma_l", to_deg(p.sigma_l)},
                                    {"beta_A", to_deg(p.beta_A)},   {"mu_A", to_deg(p.mu_A)},
                                    {"beta_B", to_deg(p.beta_B)},   {"mu_B", to_deg(p.mu_B)}};
  }
  j["trials"] = s.trials;
  j["detector_counts"] = s.detector_counts;
  j["sift_count"] = s.sift_count;
  j["sift_rate"] = rate_json(s.sift_rate());
  j["key_agreement"] = rate_json(s.key_agreement());
  j["qber"] = rate_json(s.qber());
  j["key_symbols"] = s.key_symbols;
  if (config.eve != mc::Eve::None) {
    j["eve"] = {{"attempts", s.eve_attempts},
                {"success", rate_json(s.eve_success_rate())},
                {"outcomes", s.eve_outcomes}};
  }
  if (config.protocol == mc::Protocol::Binary) {
    j["matched_rounds"] = s.matched_rounds;
    j["matched_d2"] = rate_json(s.matched_d2_rate());
  }
  if (config.protocol == mc::Protocol::TernaryM2) j["announcements"] = s.announcements;
  return j;
}

}  // namespace qeraser::cli
