#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "cli.hpp"

namespace qeraser::cli {

ImperfectGrid grid_from_json(const json& j, ImperfectGrid base) {
  if (!j.is_object()) throw std::invalid_argument("grid config must be a JSON object");
  if (j.contains("cases")) {
    base.cases.clear();
    for (const auto& c : j.at("cases")) base.cases.push_back(imperfect::parse_case(c.get<std::string>()));
  }
  if (j.contains("sigma")) base.sigma_deg = j.at("sigma").get<std::vector<double>>();
  if (j.contains("delta_theta")) base.delta_theta_deg = j.at("delta_theta").get<std::vector<double>>();
  if (j.contains("gamma")) base.gamma_deg = j.at("gamma").get<std::vector<double>>();
  return base;
}

std::string imperfect_csv(const ImperfectGrid& grid) {
  if (grid.cases.empty() || grid.sigma_deg.empty() || grid.delta_theta_deg.empty() || grid.gamma_deg.empty())
    throw std::invalid_argument("imperfection grid has an empty axis");
  std::string out = "case,sigma_deg,delta_theta_deg,gamma_deg,p_d1_closed,p_d2_closed,p_d1_sim,p_d2_sim,abs_diff\n";
  for (imperfect::Case c : grid.cases)
    for (double s : grid.sigma_deg)
      for (double dt : grid.delta_theta_deg)
        for (double g : grid.gamma_deg) {
          imperfect::Params p;
          p.sigma_u = p.sigma_l = deg(s);
          p.delta2 = deg(dt);
          p.beta_B = p.mu_B = kPi / 4 + deg(g);
          const auto closed = imperfect::detection_probs(c, p);
          const auto sim = imperfect::simulate_imperfect(c, p);
          out += fmt::format("{},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.3g}\n", imperfect::to_string(c), s,
                             dt, g, closed.d1, closed.d2, sim.d1, sim.d2, std::abs(closed.d1 - sim.d1));
        }
  return out;
}

}  // namespace qeraser::cli
